/* Copyright 2026 The schemadst Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "schemadst/data/registry.h"

namespace schemadst {

double ServiceRegistry::SeenFraction() const {
  if (all_services.empty()) return 0.0;
  return static_cast<double>(seen_services.size()) / all_services.size();
}

ServiceRegistry MarkSeenServices(const std::vector<ServiceSchema>& train_schemas,
                                 const std::vector<ServiceSchema>& eval_schemas) {
  std::set<std::string> train;
  for (const auto& schema : train_schemas) train.insert(schema.service_name);
  ServiceRegistry registry;
  for (const auto& schema : eval_schemas) {
    registry.all_services.insert(schema.service_name);
    if (train.count(schema.service_name)) {
      registry.seen_services.insert(schema.service_name);
    }
  }
  return registry;
}

}  // namespace schemadst
