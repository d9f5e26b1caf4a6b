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

#include "schemadst/data/dialogue.h"

#include "schemadst/common/error.h"

namespace schemadst {

const char* RoleName(UtteranceRole role) {
  return role == UtteranceRole::kSystem ? "system" : "user";
}

UtteranceRole ParseRole(const std::string& name) {
  if (name == "system") return UtteranceRole::kSystem;
  if (name == "user") return UtteranceRole::kUser;
  throw ParseError("unknown utterance role '" + name + "'");
}

const FrameAnnotation* DialogueTurn::FindFrame(const std::string& service) const {
  for (const auto& frame : frames) {
    if (frame.service == service) return &frame;
  }
  return nullptr;
}

}  // namespace schemadst
