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

#ifndef SCHEMADST_DATA_SGD_IO_H_
#define SCHEMADST_DATA_SGD_IO_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "schemadst/data/dialogue.h"
#include "schemadst/data/schema.h"

namespace schemadst {

using SchemaIndex = std::map<std::string, const ServiceSchema*>;

SchemaIndex IndexSchemas(const std::vector<ServiceSchema>& schemas);

// Reads a schema.json (array of service records), or the schema.json inside
// a split directory.
std::vector<ServiceSchema> LoadSchemas(const std::filesystem::path& path);

// Reads one dialogues_*.json file, or every dialogues_*.json of a split
// directory in name order. Validates against `schemas`.
std::vector<Dialogue> LoadDialogues(const std::filesystem::path& path,
                                    const std::vector<ServiceSchema>& schemas);

// Checks span bounds, service membership and slot references of a dialogue.
void ValidateDialogue(const Dialogue& dialogue, const SchemaIndex& schemas);

// Writers producing the published layouts, so synthetic corpora go through
// the same loaders as real data.
void SaveSchemas(const std::vector<ServiceSchema>& schemas,
                 const std::filesystem::path& path);
void SaveDialogues(const std::vector<Dialogue>& dialogues,
                   const std::filesystem::path& path);

// Normalized one-turn-per-line form.
void SaveTurnsJsonl(const std::vector<Dialogue>& dialogues,
                    const std::filesystem::path& path);
std::vector<Dialogue> LoadTurnsJsonl(const std::filesystem::path& path);

}  // namespace schemadst

#endif  // SCHEMADST_DATA_SGD_IO_H_
