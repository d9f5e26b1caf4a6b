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

#include "schemadst/data/sgd_io.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "schemadst/common/error.h"

namespace schemadst {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json ReadJsonFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": byte " + std::to_string(e.byte) +
                     ": " + e.what());
  }
}

void WriteTextFile(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

// SGD offsets count code points; internally we use byte offsets.
int CodepointToByte(const std::string& s, int cp) {
  int count = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) == 0x80) continue;
    if (count == cp) return static_cast<int>(i);
    ++count;
  }
  return count == cp ? static_cast<int>(s.size()) : -1;
}

int ByteToCodepoint(const std::string& s, int byte) {
  int count = 0;
  for (int i = 0; i < byte && i < static_cast<int>(s.size()); ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) ++count;
  }
  return count;
}

std::string ValueToString(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return v.dump();
}

template <typename T>
T Field(const json& record, const char* key, const std::string& where) {
  auto it = record.find(key);
  if (it == record.end()) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + ": field '" + key + "': " + e.what());
  }
}

ServiceSchema SchemaFromJson(const json& record, const std::string& where) {
  ServiceSchema schema;
  schema.service_name = Field<std::string>(record, "service_name", where);
  const std::string here = where + " service '" + schema.service_name + "'";
  schema.description = record.value("description", "");
  for (const auto& item : record.value("intents", json::array())) {
    IntentDef intent;
    intent.name = Field<std::string>(item, "name", here);
    intent.description = item.value("description", "");
    schema.intents.push_back(std::move(intent));
  }
  for (const auto& item : record.value("slots", json::array())) {
    SlotDef slot;
    slot.name = Field<std::string>(item, "name", here);
    slot.description = item.value("description", "");
    slot.is_categorical = item.value("is_categorical", false);
    for (const auto& v : item.value("possible_values", json::array())) {
      slot.possible_values.push_back(ValueToString(v));
    }
    schema.slots.push_back(std::move(slot));
  }
  FillDisplayDefaults(schema);
  return schema;
}

json SchemaToJson(const ServiceSchema& schema) {
  json record = {{"service_name", schema.service_name},
                 {"description", schema.description},
                 {"slots", json::array()},
                 {"intents", json::array()}};
  for (const auto& slot : schema.slots) {
    record["slots"].push_back({{"name", slot.name},
                               {"description", slot.description},
                               {"is_categorical", slot.is_categorical},
                               {"possible_values", slot.possible_values}});
  }
  for (const auto& intent : schema.intents) {
    record["intents"].push_back(
        {{"name", intent.name}, {"description", intent.description}});
  }
  return record;
}

std::vector<SpanLabel> SpansFromFrame(const json& frame, UtteranceRole role,
                                      const std::string& utterance,
                                      const std::string& where) {
  std::vector<SpanLabel> spans;
  for (const auto& item : frame.value("slots", json::array())) {
    SpanLabel span;
    span.slot = Field<std::string>(item, "slot", where);
    span.role = role;
    const int start = Field<int>(item, "start", where);
    const int end = Field<int>(item, "exclusive_end", where);
    span.start_char = CodepointToByte(utterance, start);
    span.end_char = CodepointToByte(utterance, end);
    if (span.start_char < 0 || span.end_char < 0) {
      throw ValidationError(where + ": span for slot '" + span.slot + "' [" +
                            std::to_string(start) + ", " + std::to_string(end) +
                            ") exceeds the " + RoleName(role) + " utterance");
    }
    spans.push_back(std::move(span));
  }
  return spans;
}

std::vector<Dialogue> DialoguesFromJson(const json& doc, const std::string& file) {
  if (!doc.is_array()) throw ParseError(file + ": expected a JSON array");
  std::vector<Dialogue> out;
  for (const auto& record : doc) {
    Dialogue dialogue;
    dialogue.dialogue_id = Field<std::string>(record, "dialogue_id", file);
    const std::string where = file + " dialogue " + dialogue.dialogue_id;
    dialogue.services = record.value("services", std::vector<std::string>{});
    const json* pending_system = nullptr;
    for (const auto& turn : Field<json>(record, "turns", where)) {
      const std::string speaker = Field<std::string>(turn, "speaker", where);
      if (speaker == "SYSTEM") {
        pending_system = &turn;
        continue;
      }
      if (speaker != "USER") {
        throw ParseError(where + ": unknown speaker '" + speaker + "'");
      }
      DialogueTurn out_turn;
      out_turn.dialogue_id = dialogue.dialogue_id;
      out_turn.turn_index = static_cast<int>(dialogue.turns.size());
      const std::string turn_where =
          where + " turn " + std::to_string(out_turn.turn_index);
      out_turn.user_utterance = Field<std::string>(turn, "utterance", turn_where);
      if (pending_system) {
        out_turn.system_utterance =
            Field<std::string>(*pending_system, "utterance", turn_where);
      }
      for (const auto& frame_json : turn.value("frames", json::array())) {
        FrameAnnotation frame;
        frame.service = Field<std::string>(frame_json, "service", turn_where);
        const json state = frame_json.value("state", json::object());
        frame.active_intent = state.value("active_intent", std::string(kNoneIntent));
        for (const auto& slot : state.value("requested_slots", json::array())) {
          frame.requested_slots.insert(slot.get<std::string>());
        }
        const json slot_values = state.value("slot_values", json::object());
        for (const auto& [slot, values] : slot_values.items()) {
          std::vector<std::string> alternatives;
          for (const auto& v : values) alternatives.push_back(ValueToString(v));
          frame.state_slot_values[slot] = std::move(alternatives);
        }
        if (pending_system) {
          for (const auto& sys_frame :
               pending_system->value("frames", json::array())) {
            if (sys_frame.value("service", "") != frame.service) continue;
            auto spans = SpansFromFrame(sys_frame, UtteranceRole::kSystem,
                                        out_turn.system_utterance, turn_where);
            frame.turn_spans.insert(frame.turn_spans.end(), spans.begin(),
                                    spans.end());
          }
        }
        auto spans = SpansFromFrame(frame_json, UtteranceRole::kUser,
                                    out_turn.user_utterance, turn_where);
        frame.turn_spans.insert(frame.turn_spans.end(), spans.begin(), spans.end());
        out_turn.frames.push_back(std::move(frame));
      }
      pending_system = nullptr;
      dialogue.turns.push_back(std::move(out_turn));
    }
    out.push_back(std::move(dialogue));
  }
  return out;
}

json SpansToJson(const std::vector<SpanLabel>& spans, UtteranceRole role,
                 const std::string& utterance) {
  json slots = json::array();
  for (const auto& span : spans) {
    if (span.role != role) continue;
    slots.push_back({{"slot", span.slot},
                     {"start", ByteToCodepoint(utterance, span.start_char)},
                     {"exclusive_end", ByteToCodepoint(utterance, span.end_char)}});
  }
  return slots;
}

std::vector<fs::path> DialogueFiles(const fs::path& path) {
  if (!fs::is_directory(path)) return {path};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("dialogues_", 0) == 0 && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw ParseError(path.string() + ": no dialogues_*.json files");
  }
  return files;
}

}  // namespace

SchemaIndex IndexSchemas(const std::vector<ServiceSchema>& schemas) {
  SchemaIndex index;
  for (const auto& schema : schemas) index[schema.service_name] = &schema;
  return index;
}

std::vector<ServiceSchema> LoadSchemas(const fs::path& path) {
  const fs::path file = fs::is_directory(path) ? path / "schema.json" : path;
  const json doc = ReadJsonFile(file);
  if (!doc.is_array()) {
    throw ParseError(file.string() + ": expected a JSON array of services");
  }
  std::vector<ServiceSchema> schemas;
  for (const auto& record : doc) {
    schemas.push_back(SchemaFromJson(record, file.string()));
    ValidateSchema(schemas.back());
  }
  return schemas;
}

void ValidateDialogue(const Dialogue& dialogue, const SchemaIndex& schemas) {
  int previous_index = -1;
  for (const auto& turn : dialogue.turns) {
    const std::string where = "dialogue " + dialogue.dialogue_id + " turn " +
                              std::to_string(turn.turn_index);
    if (turn.turn_index <= previous_index) {
      throw ValidationError(where + ": turn_index not strictly increasing");
    }
    previous_index = turn.turn_index;
    for (const auto& frame : turn.frames) {
      auto it = schemas.find(frame.service);
      if (it == schemas.end()) {
        throw ValidationError(where + ": unknown service '" + frame.service + "'");
      }
      const ServiceSchema& schema = *it->second;
      if (frame.active_intent != kNoneIntent &&
          !schema.FindIntent(frame.active_intent)) {
        throw ValidationError(where + ": unknown intent '" + frame.active_intent +
                              "' for service '" + frame.service + "'");
      }
      for (const auto& slot : frame.requested_slots) {
        if (!schema.FindSlot(slot)) {
          throw ValidationError(where + ": requested slot '" + slot +
                                "' not in service '" + frame.service + "'");
        }
      }
      for (const auto& [slot, values] : frame.state_slot_values) {
        if (!schema.FindSlot(slot)) {
          throw ValidationError(where + ": state slot '" + slot +
                                "' not in service '" + frame.service + "'");
        }
        if (values.empty()) {
          throw ValidationError(where + ": state slot '" + slot +
                                "' has no values");
        }
      }
      for (const auto& span : frame.turn_spans) {
        const SlotDef* slot = schema.FindSlot(span.slot);
        if (!slot) {
          throw ValidationError(where + ": span slot '" + span.slot +
                                "' not in service '" + frame.service + "'");
        }
        if (slot->is_categorical) {
          throw ValidationError(where + ": span for categorical slot '" +
                                span.slot + "'");
        }
        const int length = static_cast<int>(turn.Utterance(span.role).size());
        if (span.start_char < 0 || span.start_char >= span.end_char ||
            span.end_char > length) {
          throw ValidationError(where + ": span for slot '" + span.slot + "' [" +
                                std::to_string(span.start_char) + ", " +
                                std::to_string(span.end_char) + ") out of " +
                                RoleName(span.role) + " utterance bounds (" +
                                std::to_string(length) + ")");
        }
      }
    }
  }
}

std::vector<Dialogue> LoadDialogues(const fs::path& path,
                                    const std::vector<ServiceSchema>& schemas) {
  const SchemaIndex index = IndexSchemas(schemas);
  std::vector<Dialogue> out;
  for (const auto& file : DialogueFiles(path)) {
    auto dialogues = DialoguesFromJson(ReadJsonFile(file), file.string());
    for (auto& dialogue : dialogues) {
      ValidateDialogue(dialogue, index);
      out.push_back(std::move(dialogue));
    }
  }
  return out;
}

void SaveSchemas(const std::vector<ServiceSchema>& schemas, const fs::path& path) {
  json doc = json::array();
  for (const auto& schema : schemas) doc.push_back(SchemaToJson(schema));
  WriteTextFile(path, doc.dump(2) + "\n");
}

void SaveDialogues(const std::vector<Dialogue>& dialogues, const fs::path& path) {
  json doc = json::array();
  for (const auto& dialogue : dialogues) {
    json record = {{"dialogue_id", dialogue.dialogue_id},
                   {"services", dialogue.services},
                   {"turns", json::array()}};
    for (const auto& turn : dialogue.turns) {
      if (turn.turn_index > 0 || !turn.system_utterance.empty()) {
        json sys = {{"speaker", "SYSTEM"},
                    {"utterance", turn.system_utterance},
                    {"frames", json::array()}};
        for (const auto& frame : turn.frames) {
          sys["frames"].push_back(
              {{"service", frame.service},
               {"slots", SpansToJson(frame.turn_spans, UtteranceRole::kSystem,
                                     turn.system_utterance)},
               {"actions", json::array()}});
        }
        record["turns"].push_back(std::move(sys));
      }
      json usr = {{"speaker", "USER"},
                  {"utterance", turn.user_utterance},
                  {"frames", json::array()}};
      for (const auto& frame : turn.frames) {
        json slot_values = json::object();
        for (const auto& [slot, values] : frame.state_slot_values) {
          slot_values[slot] = values;
        }
        usr["frames"].push_back(
            {{"service", frame.service},
             {"slots", SpansToJson(frame.turn_spans, UtteranceRole::kUser,
                                   turn.user_utterance)},
             {"actions", json::array()},
             {"state",
              {{"active_intent", frame.active_intent},
               {"requested_slots", std::vector<std::string>(
                                       frame.requested_slots.begin(),
                                       frame.requested_slots.end())},
               {"slot_values", slot_values}}}});
      }
      record["turns"].push_back(std::move(usr));
    }
    doc.push_back(std::move(record));
  }
  WriteTextFile(path, doc.dump(2) + "\n");
}

void SaveTurnsJsonl(const std::vector<Dialogue>& dialogues, const fs::path& path) {
  std::ostringstream out;
  for (const auto& dialogue : dialogues) {
    for (const auto& turn : dialogue.turns) {
      json line = {{"dialogue_id", dialogue.dialogue_id},
                   {"dialogue_services", dialogue.services},
                   {"turn_index", turn.turn_index},
                   {"system_utterance", turn.system_utterance},
                   {"user_utterance", turn.user_utterance},
                   {"frames", json::array()}};
      for (const auto& frame : turn.frames) {
        json spans = json::array();
        for (const auto& span : frame.turn_spans) {
          spans.push_back({{"slot", span.slot},
                           {"role", RoleName(span.role)},
                           {"start", span.start_char},
                           {"end", span.end_char}});
        }
        json slot_values = json::object();
        for (const auto& [slot, values] : frame.state_slot_values) {
          slot_values[slot] = values;
        }
        line["frames"].push_back(
            {{"service", frame.service},
             {"active_intent", frame.active_intent},
             {"requested_slots", std::vector<std::string>(
                                     frame.requested_slots.begin(),
                                     frame.requested_slots.end())},
             {"slot_values", slot_values},
             {"spans", spans}});
      }
      out << line.dump() << "\n";
    }
  }
  WriteTextFile(path, out.str());
}

std::vector<Dialogue> LoadTurnsJsonl(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::vector<Dialogue> out;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_number);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(where + ": byte " + std::to_string(e.byte) + ": " + e.what());
    }
    DialogueTurn turn;
    turn.dialogue_id = Field<std::string>(record, "dialogue_id", where);
    turn.turn_index = Field<int>(record, "turn_index", where);
    turn.system_utterance = Field<std::string>(record, "system_utterance", where);
    turn.user_utterance = Field<std::string>(record, "user_utterance", where);
    for (const auto& f : record.value("frames", json::array())) {
      FrameAnnotation frame;
      frame.service = Field<std::string>(f, "service", where);
      frame.active_intent = Field<std::string>(f, "active_intent", where);
      for (const auto& s : f.value("requested_slots", json::array())) {
        frame.requested_slots.insert(s.get<std::string>());
      }
      const json slot_values = f.value("slot_values", json::object());
      for (const auto& [slot, values] : slot_values.items()) {
        frame.state_slot_values[slot] = values.get<std::vector<std::string>>();
      }
      for (const auto& s : f.value("spans", json::array())) {
        frame.turn_spans.push_back({Field<std::string>(s, "slot", where),
                                    ParseRole(Field<std::string>(s, "role", where)),
                                    Field<int>(s, "start", where),
                                    Field<int>(s, "end", where)});
      }
      turn.frames.push_back(std::move(frame));
    }
    if (out.empty() || out.back().dialogue_id != turn.dialogue_id) {
      Dialogue dialogue;
      dialogue.dialogue_id = turn.dialogue_id;
      dialogue.services =
          record.value("dialogue_services", std::vector<std::string>{});
      out.push_back(std::move(dialogue));
    }
    out.back().turns.push_back(std::move(turn));
  }
  return out;
}

}  // namespace schemadst
