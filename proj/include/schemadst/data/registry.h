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

#ifndef SCHEMADST_DATA_REGISTRY_H_
#define SCHEMADST_DATA_REGISTRY_H_

#include <set>
#include <string>
#include <vector>

#include "schemadst/data/schema.h"

namespace schemadst {

// Seen/unseen bookkeeping for evaluated services.
struct ServiceRegistry {
  std::set<std::string> seen_services;
  std::set<std::string> all_services;

  bool IsSeen(const std::string& service) const {
    return seen_services.count(service) > 0;
  }
  double SeenFraction() const;
};

// seen = eval services that also appear in the training schemas.
ServiceRegistry MarkSeenServices(const std::vector<ServiceSchema>& train_schemas,
                                 const std::vector<ServiceSchema>& eval_schemas);

}  // namespace schemadst

#endif  // SCHEMADST_DATA_REGISTRY_H_
