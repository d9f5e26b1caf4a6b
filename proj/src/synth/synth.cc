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

#include "schemadst/synth/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "bank.h"
#include "schemadst/common/error.h"
#include "schemadst/common/random.h"
#include "schemadst/data/normalize.h"
#include "schemadst/data/sgd_io.h"

namespace schemadst {
namespace {

using synth::DomainTemplate;
using synth::IntentTemplate;
using synth::SlotTemplate;

constexpr double kPreferUnsetSlot = 0.8;

struct ServicePlan {
  ServiceSchema schema;
  std::vector<const SlotTemplate*> slots;  // parallel to schema.slots
  std::vector<const IntentTemplate*> intents;
};

// Returns the pattern with {slot}/{value}/{intent} substituted; `value_at`
// receives the byte offset of the value when present.
std::string Fill(std::string_view pattern, const std::string& slot,
                 const std::string& value, const std::string& intent,
                 int* value_at = nullptr) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size();) {
    if (pattern.compare(i, 6, "{slot}") == 0) {
      out += slot;
      i += 6;
    } else if (pattern.compare(i, 7, "{value}") == 0) {
      if (value_at) *value_at = static_cast<int>(out.size());
      out += value;
      i += 7;
    } else if (pattern.compare(i, 8, "{intent}") == 0) {
      out += intent;
      i += 8;
    } else {
      out.push_back(pattern[i++]);
    }
  }
  return out;
}

// Accumulates sentences and the spans of values placed in them.
class UtteranceWriter {
 public:
  // Appends one sentence; returns the value's [start, end) or {-1, -1}.
  std::pair<int, int> Add(const std::string& sentence, const std::string& value,
                          int value_at) {
    if (!text_.empty()) text_ += " ";
    const int base = static_cast<int>(text_.size());
    text_ += sentence;
    if (value_at < 0) return {-1, -1};
    return {base + value_at, base + value_at + static_cast<int>(value.size())};
  }
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

std::string Sentence(std::string clause, bool question) {
  return clause + (question ? " ?" : " .");
}

ServicePlan MakeService(const DomainTemplate& domain, const std::string& name,
                        const SynthConfig& config, Rng& rng) {
  ServicePlan plan;
  plan.schema.service_name = name;
  plan.schema.description = domain.description;

  std::vector<int> cat, noncat;
  for (int i = 0; i < static_cast<int>(domain.slots.size()); ++i) {
    (synth::FindSlotTemplate(domain.slots[i]).categorical ? cat : noncat).push_back(i);
  }
  const int n = std::min<int>(config.slots_per_service, domain.slots.size());
  int n_cat = std::min<int>(std::lround(config.categorical_fraction * n), cat.size());
  int n_noncat = std::min<int>(n - n_cat, noncat.size());
  n_cat = std::min<int>(n - n_noncat, cat.size());
  rng.Shuffle(cat);
  rng.Shuffle(noncat);
  std::vector<int> chosen(cat.begin(), cat.begin() + n_cat);
  chosen.insert(chosen.end(), noncat.begin(), noncat.begin() + n_noncat);
  std::sort(chosen.begin(), chosen.end());

  for (int i : chosen) {
    const SlotTemplate& t = synth::FindSlotTemplate(domain.slots[i]);
    SlotDef slot;
    slot.name = t.name;
    slot.description = t.description;
    slot.is_categorical = t.categorical;
    if (t.categorical) {
      const int k = std::min<int>(config.values_per_categorical, t.values.size());
      slot.possible_values.assign(t.values.begin(), t.values.begin() + k);
    }
    plan.schema.slots.push_back(std::move(slot));
    plan.slots.push_back(&t);
  }
  const int n_intents = std::min<int>(config.intents_per_service, domain.intents.size());
  for (int i = 0; i < n_intents; ++i) {
    const IntentTemplate& t = domain.intents[i];
    plan.schema.intents.push_back({t.name, t.description, ""});
    plan.intents.push_back(&t);
  }
  FillDisplayDefaults(plan.schema);
  ValidateSchema(plan.schema);
  return plan;
}

// Per-service progress within one dialogue.
struct Track {
  bool started = false;
  int intent = -1;
  std::map<std::string, std::string> values;
};

struct Update {
  int slot = 0;
  std::string value;
  bool dontcare = false;
  bool offered = false;
};

class DialogueGenerator {
 public:
  DialogueGenerator(const SynthConfig& config, Rng& rng) : config_(config), rng_(rng) {}

  Dialogue Generate(const std::string& id, const std::vector<const ServicePlan*>& services) {
    Dialogue dialogue;
    dialogue.dialogue_id = id;
    for (const auto* s : services) dialogue.services.push_back(s->schema.service_name);

    const int turns =
        config_.min_turns + static_cast<int>(rng_.Below(config_.max_turns - config_.min_turns + 1));
    int switch_at = turns;
    if (services.size() > 1) {
      switch_at = turns >= 4 ? 2 + static_cast<int>(rng_.Below(turns - 3)) : turns;
    }
    std::map<const ServicePlan*, Track> tracks;
    const ServicePlan* pending_request_service = nullptr;
    int pending_request = -1;

    for (int t = 0; t < turns; ++t) {
      const ServicePlan* plan =
          services[t >= switch_at && services.size() > 1 ? 1 : 0];
      Track& track = tracks[plan];
      const int n_slots = static_cast<int>(plan->slots.size());

      DialogueTurn turn;
      turn.dialogue_id = id;
      turn.turn_index = t;
      FrameAnnotation frame;
      frame.service = plan->schema.service_name;

      // Slot updates of this turn.
      std::vector<Update> updates;
      const int k = SampleUpdateCount(n_slots);
      std::set<int> used;
      for (int i = 0; i < k; ++i) {
        std::vector<int> unset, set;
        for (int s = 0; s < n_slots; ++s) {
          if (used.count(s)) continue;
          (track.values.count(plan->schema.slots[s].name) ? set : unset).push_back(s);
        }
        if (unset.empty() && set.empty()) break;
        const bool take_unset =
            !unset.empty() && (set.empty() || rng_.Bernoulli(kPreferUnsetSlot));
        const int s = rng_.Pick(take_unset ? unset : set);
        used.insert(s);
        updates.push_back(MakeUpdate(*plan, track, s));
      }

      const bool started_before = track.started;
      const bool may_offer = t > 0 && started_before;
      if (may_offer && rng_.Bernoulli(config_.offer_probability)) {
        for (auto& u : updates) {
          if (!u.dontcare) {
            u.offered = true;
            break;
          }
        }
      }

      // System side.
      UtteranceWriter system;
      if (t > 0) {
        if (pending_request_service) {
          const ServicePlan& rp = *pending_request_service;
          const SlotTemplate& st = *rp.slots[pending_request];
          const std::string value = rng_.Pick(ValuePool(rp, pending_request));
          system.Add(Fill(synth::kAnswerPattern, st.phrase, value, ""), value, -1);
          pending_request_service = nullptr;
        }
        if (!started_before) {
          system.Add(synth::kSwitchPrompt, "", -1);
        } else if (track.intent >= 0) {
          system.Add(Fill(synth::kAckPattern, "", "", plan->intents[track.intent]->phrase),
                     "", -1);
        }
        for (const auto& u : updates) {
          if (!u.offered) continue;
          int at = -1;
          const std::string sentence =
              Fill(synth::kOfferPattern, plan->slots[u.slot]->phrase, u.value, "", &at);
          auto [b, e] = system.Add(sentence, u.value, at);
          if (!plan->schema.slots[u.slot].is_categorical) {
            frame.turn_spans.push_back(
                {plan->schema.slots[u.slot].name, UtteranceRole::kSystem, b, e});
          }
        }
      }

      // User side.
      UtteranceWriter user;
      if (!track.started) {
        track.started = true;
        track.intent = static_cast<int>(rng_.Below(plan->intents.size()));
        user.Add(Sentence(Fill(synth::kIntentPattern, "", "",
                               plan->intents[track.intent]->phrase),
                          false),
                 "", -1);
      } else if (plan->intents.size() > 1 &&
                 rng_.Bernoulli(config_.intent_change_probability)) {
        int next = static_cast<int>(rng_.Below(plan->intents.size() - 1));
        if (next >= track.intent) ++next;
        track.intent = next;
        user.Add(Sentence(Fill(synth::kIntentChangePattern, "", "",
                               plan->intents[track.intent]->phrase),
                          false),
                 "", -1);
      }
      for (const auto& u : updates) {
        if (u.offered) user.Add(Sentence(synth::kAcceptPattern, false), "", -1);
      }
      for (const auto& u : updates) {
        if (u.offered) continue;
        const std::string& phrase = plan->slots[u.slot]->phrase;
        if (u.dontcare) {
          user.Add(Sentence(Fill(rng_.Pick(synth::DontcarePatterns()), phrase, "", ""),
                            false),
                   "", -1);
          continue;
        }
        int at = -1;
        const std::string clause =
            Fill(rng_.Pick(synth::InformPatterns()), phrase, u.value, "", &at);
        auto [b, e] = user.Add(Sentence(clause, false), u.value, at);
        if (!plan->schema.slots[u.slot].is_categorical) {
          frame.turn_spans.push_back(
              {plan->schema.slots[u.slot].name, UtteranceRole::kUser, b, e});
        }
      }
      const double request_rate =
          std::min(1.0, (1.0 - config_.requested_negative_ratio) * n_slots);
      if (rng_.Bernoulli(request_rate)) {
        std::vector<int> free;
        for (int s = 0; s < n_slots; ++s) {
          if (!used.count(s)) free.push_back(s);
        }
        if (!free.empty()) {
          const int s = rng_.Pick(free);
          user.Add(Sentence(Fill(rng_.Pick(synth::RequestPatterns()),
                                 plan->slots[s]->phrase, "", ""),
                            true),
                   "", -1);
          frame.requested_slots.insert(plan->schema.slots[s].name);
          pending_request_service = plan;
          pending_request = s;
        }
      }
      if (user.text().empty()) {
        user.Add(Sentence(rng_.Pick(synth::FillerPatterns()), false), "", -1);
      }

      for (const auto& u : updates) {
        track.values[plan->schema.slots[u.slot].name] = u.value;
      }
      frame.active_intent = plan->intents[track.intent]->name;
      for (const auto& [slot, value] : track.values) {
        frame.state_slot_values[slot] = {value};
      }
      turn.system_utterance = system.text();
      turn.user_utterance = user.text();
      turn.frames.push_back(std::move(frame));
      dialogue.turns.push_back(std::move(turn));
    }
    return dialogue;
  }

 private:
  int SampleUpdateCount(int n_slots) {
    const double p = 1.0 - config_.status_negative_ratio;
    int k = 0;
    for (int i = 0; i < n_slots; ++i) k += rng_.Bernoulli(p) ? 1 : 0;
    return k;
  }

  static const std::vector<std::string>& ValuePool(const ServicePlan& plan, int slot) {
    const SlotDef& def = plan.schema.slots[slot];
    return def.is_categorical ? def.possible_values : plan.slots[slot]->values;
  }

  Update MakeUpdate(const ServicePlan& plan, const Track& track, int slot) {
    Update u;
    u.slot = slot;
    auto it = track.values.find(plan.schema.slots[slot].name);
    const std::string current = it == track.values.end() ? "" : it->second;
    if (current != kDontcareValue && rng_.Bernoulli(config_.dontcare_probability)) {
      u.dontcare = true;
      u.value = kDontcareValue;
      return u;
    }
    std::vector<std::string> pool;
    for (const auto& v : ValuePool(plan, slot)) {
      if (v != current) pool.push_back(v);
    }
    u.value = rng_.Pick(pool);
    return u;
  }

  const SynthConfig& config_;
  Rng& rng_;
};

std::string DialogueId(int split, int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%d_%05d", split, index);
  return buf;
}

}  // namespace

void SynthConfig::Validate() const {
  if (n_services < 1) throw ConfigError("n_services must be at least 1");
  if (!(unseen_fraction >= 0.0 && unseen_fraction < 1.0)) {
    throw ConfigError("unseen_fraction must lie in [0, 1)");
  }
  const int n_unseen = static_cast<int>(std::lround(unseen_fraction * n_services));
  if (n_services - n_unseen < 1) throw ConfigError("no seen services left");
  if (intents_per_service < 1) throw ConfigError("intents_per_service must be at least 1");
  if (slots_per_service < 1) {
    throw ConfigError("slots_per_service must be at least 1");
  }
  if (!(categorical_fraction >= 0.0 && categorical_fraction <= 1.0)) {
    throw ConfigError("categorical_fraction must lie in [0, 1]");
  }
  if (values_per_categorical < 2) throw ConfigError("values_per_categorical must be >= 2");
  if (n_dialogues < 1) throw ConfigError("n_dialogues must be at least 1");
  if (!(eval_fraction >= 0.0 && eval_fraction < 1.0)) {
    throw ConfigError("eval_fraction must lie in [0, 1)");
  }
  if (min_turns < 1 || max_turns < min_turns) {
    throw ConfigError("turn range must satisfy 1 <= min_turns <= max_turns");
  }
  auto probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1]");
  };
  probability(multi_service_fraction, "multi_service_fraction");
  probability(status_negative_ratio, "status_negative_ratio");
  probability(requested_negative_ratio, "requested_negative_ratio");
  probability(dontcare_probability, "dontcare_probability");
  probability(offer_probability, "offer_probability");
  probability(intent_change_probability, "intent_change_probability");
}

nlohmann::json SynthConfig::ToJson() const {
  return {{"n_services", n_services},
          {"unseen_fraction", unseen_fraction},
          {"intents_per_service", intents_per_service},
          {"slots_per_service", slots_per_service},
          {"categorical_fraction", categorical_fraction},
          {"values_per_categorical", values_per_categorical},
          {"n_dialogues", n_dialogues},
          {"eval_fraction", eval_fraction},
          {"min_turns", min_turns},
          {"max_turns", max_turns},
          {"multi_service_fraction", multi_service_fraction},
          {"status_negative_ratio", status_negative_ratio},
          {"requested_negative_ratio", requested_negative_ratio},
          {"dontcare_probability", dontcare_probability},
          {"offer_probability", offer_probability},
          {"intent_change_probability", intent_change_probability},
          {"seed", seed}};
}

SynthConfig SynthConfig::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("synth config must be an object");
  SynthConfig c;
  nlohmann::json merged = c.ToJson();
  for (const auto& [key, value] : j.items()) {
    if (!merged.contains(key)) throw ConfigError("unknown synth config key '" + key + "'");
    merged[key] = value;
  }
  try {
    c.n_services = merged["n_services"].get<int>();
    c.unseen_fraction = merged["unseen_fraction"].get<double>();
    c.intents_per_service = merged["intents_per_service"].get<int>();
    c.slots_per_service = merged["slots_per_service"].get<int>();
    c.categorical_fraction = merged["categorical_fraction"].get<double>();
    c.values_per_categorical = merged["values_per_categorical"].get<int>();
    c.n_dialogues = merged["n_dialogues"].get<int>();
    c.eval_fraction = merged["eval_fraction"].get<double>();
    c.min_turns = merged["min_turns"].get<int>();
    c.max_turns = merged["max_turns"].get<int>();
    c.multi_service_fraction = merged["multi_service_fraction"].get<double>();
    c.status_negative_ratio = merged["status_negative_ratio"].get<double>();
    c.requested_negative_ratio = merged["requested_negative_ratio"].get<double>();
    c.dontcare_probability = merged["dontcare_probability"].get<double>();
    c.offer_probability = merged["offer_probability"].get<double>();
    c.intent_change_probability = merged["intent_change_probability"].get<double>();
    c.seed = merged["seed"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("synth config: ") + e.what());
  }
  c.Validate();
  return c;
}

std::vector<std::string> SynthWordList() {
  std::vector<std::string> texts;
  for (const auto& t : synth::SlotTemplates()) {
    texts.push_back(t.name);
    texts.push_back(t.description);
    texts.push_back(t.phrase);
    for (const auto& v : t.values) {
      texts.push_back(v);
      texts.push_back(SpellNumber(v));
    }
  }
  for (const auto& d : synth::DomainTemplates()) {
    texts.push_back(d.name);
    texts.push_back(d.description);
    for (const auto& i : d.intents) {
      texts.push_back(i.name);
      texts.push_back(SplitIdentifierWords(i.name));
      texts.push_back(i.description);
      texts.push_back(i.phrase);
    }
  }
  for (const auto* bank : {&synth::InformPatterns(), &synth::DontcarePatterns(),
                           &synth::RequestPatterns(), &synth::FillerPatterns()}) {
    for (const auto& p : *bank) texts.push_back(Fill(p, "", "", ""));
  }
  for (const char* p : {synth::kIntentPattern, synth::kIntentChangePattern,
                        synth::kAckPattern, synth::kAnswerPattern, synth::kOfferPattern,
                        synth::kAcceptPattern, synth::kSwitchPrompt}) {
    texts.push_back(Fill(p, "", "", ""));
  }
  texts.push_back(". ? , : _ 0123456789");
  return texts;
}

SynthCorpus GenerateCorpus(const SynthConfig& config) {
  config.Validate();
  Rng rng(config.seed);
  const auto& domains = synth::DomainTemplates();
  const int n_unseen = static_cast<int>(std::lround(config.unseen_fraction * config.n_services));
  const int n_seen = config.n_services - n_unseen;

  std::vector<ServicePlan> plans;
  std::map<std::string, int> name_count;
  auto next_name = [&](const DomainTemplate& d) {
    return d.name + "_" + std::to_string(++name_count[d.name]);
  };
  for (int i = 0; i < n_seen; ++i) {
    const DomainTemplate& d = domains[i % domains.size()];
    plans.push_back(MakeService(d, next_name(d), config, rng));
  }
  for (int j = 0; j < n_unseen; ++j) {
    // New name over a seen service's domain: same slot descriptions, new service.
    const DomainTemplate& d = domains[(j % n_seen) % domains.size()];
    plans.push_back(MakeService(d, next_name(d), config, rng));
  }

  SynthCorpus corpus;
  for (int i = 0; i < n_seen; ++i) corpus.train_schemas.push_back(plans[i].schema);
  for (const auto& p : plans) corpus.eval_schemas.push_back(p.schema);
  corpus.registry = MarkSeenServices(corpus.train_schemas, corpus.eval_schemas);

  const int n_eval = static_cast<int>(std::lround(config.n_dialogues * config.eval_fraction));
  const int n_unseen_dialogues = n_unseen > 0 ? n_eval / 2 : 0;
  const int n_train = config.n_dialogues - n_eval;

  DialogueGenerator generator(config, rng);
  auto pick_services = [&](const ServicePlan* primary) {
    std::vector<const ServicePlan*> services = {primary};
    if (n_seen > 1 && rng.Bernoulli(config.multi_service_fraction)) {
      const ServicePlan* second = primary;
      while (second == primary) second = &plans[rng.Below(n_seen)];
      services.push_back(second);
    }
    return services;
  };
  for (int d = 0; d < config.n_dialogues; ++d) {
    const bool train = d < n_train;
    const bool unseen = !train && d - n_train < n_unseen_dialogues;
    const ServicePlan* primary =
        unseen ? &plans[n_seen + (d - n_train) % n_unseen] : &plans[d % n_seen];
    const auto services = pick_services(primary);
    if (train) {
      corpus.train_dialogues.push_back(generator.Generate(DialogueId(1, d), services));
    } else {
      corpus.eval_dialogues.push_back(
          generator.Generate(DialogueId(2, d - n_train), services));
    }
  }

  std::vector<std::string> texts = SynthWordList();
  for (const auto& p : plans) texts.push_back(p.schema.service_name);
  corpus.vocabulary = BuildVocabulary(texts);
  return corpus;
}

void WriteCorpus(const SynthCorpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "train");
  std::filesystem::create_directories(dir / "dev");
  SaveSchemas(corpus.train_schemas, dir / "train" / "schema.json");
  SaveDialogues(corpus.train_dialogues, dir / "train" / "dialogues_001.json");
  SaveSchemas(corpus.eval_schemas, dir / "dev" / "schema.json");
  SaveDialogues(corpus.eval_dialogues, dir / "dev" / "dialogues_001.json");
  corpus.vocabulary.Save(dir / "vocab.txt");
}

}  // namespace schemadst
