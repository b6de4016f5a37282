#include "dam/datagen/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "dam/errors.hpp"

namespace dam::datagen {

namespace {

const char* const kWeightOne[] = {
    "xray",       "ecg",        "cbc",       "urinalysis", "bmp",        "troponin",
    "lipase",     "ultrasound", "splint",    "sutures",    "iv-fluids",  "antiemetic",
    "nebulizer",  "lactate",    "d-dimer",   "culture",    "inr",        "glucose",
    "tetanus",    "wound-care", "catheter",  "analgesia",  "antibiotic", "swab",
    "crutches",   "pregnancy",  "magnesium", "bnp",        "abg",        "oximetry"};

const char* const kWeightTwo[] = {"ct-head", "ct-abdomen", "mri",      "consult",  "transfusion",
                                  "sedation", "reduction", "lumbar",   "ct-chest", "angiogram"};

const char* const kFillers[] = {
    "patient",   "states",    "reports",   "denies",    "since",     "yesterday", "morning",
    "evening",   "today",     "started",   "while",     "walking",   "home",      "work",
    "felt",      "like",      "some",      "mild",      "moderate",  "severe",    "pain",
    "ache",      "sore",      "tired",     "weak",      "dizzy",     "nausea",    "cough",
    "fever",     "chills",    "left",      "right",     "side",      "arm",       "leg",
    "back",      "chest",     "head",      "neck",      "stomach",   "knee",      "ankle",
    "wrist",     "hand",      "foot",      "eye",       "ear",       "throat",    "skin",
    "rash",      "swelling",  "bruise",    "cut",       "fall",      "twisted",   "lifting",
    "history",   "of",        "and",       "with",      "no",        "has",       "had",
    "was",       "is",        "the",       "a",         "to",        "for",       "on",
    "in",        "at",        "after",     "before",    "during",    "about",     "hours",
    "days",      "weeks",     "ago",       "two",       "three",     "several",   "times",
    "daily",     "nightly",   "takes",     "medication", "prescribed", "over",    "counter",
    "tylenol",   "ibuprofen", "aspirin",   "vitamins",  "inhaler",   "insulin",   "metformin",
    "lisinopril", "allergic", "penicillin", "none",     "known",     "family",    "member",
    "brought",   "by",        "friend",    "arrived",   "alone",     "ambulatory", "alert",
    "oriented",  "calm",      "anxious",   "crying",    "resting",   "comfortable", "appears",
    "well",      "unwell",    "pale",      "flushed",   "sweaty",    "breathing", "normal",
    "fast",      "slow",      "steady",    "worse",     "better",    "same",      "constant",
    "intermittent", "sharp",  "dull",      "burning",   "throbbing", "radiating", "localized",
    "hypertension", "diabetes", "asthma",  "smoker",    "drinks",    "occasionally", "lives",
    "independent", "retired", "student",   "works",     "construction", "office", "nurse",
    "asks",      "water",     "food",      "ate",       "drank",     "slept",     "poorly",
    "unable",    "bear",      "weight",    "move",      "lift",      "see"};

const CategoricalDistribution kCategorical[] = {
    {"ed_location", {"main", "fast_track", "pediatric", "behavioral"}, {0.55, 0.25, 0.15, 0.05}},
    {"gender", {"female", "male"}, {0.52, 0.48}},
    {"age_range", {"0-17", "18-34", "35-49", "50-64", "65-79", "80+"},
     {0.15, 0.25, 0.2, 0.18, 0.14, 0.08}},
    {"arrival_method", {"walk_in", "ambulance", "police", "transfer"}, {0.7, 0.2, 0.03, 0.07}},
    {"insurance", {"private", "medicare", "medicaid", "self_pay"}, {0.45, 0.25, 0.2, 0.1}},
};

const NumericDistribution kNumeric[] = {
    {"arrival_hour", 13.0, 6.0, 0.0, 23.0, 0},   {"prior_visits", 1.0, 1.5, 0.0, 12.0, 0},
    {"heart_rate", 88.0, 18.0, 35.0, 190.0, 0},  {"systolic_bp", 132.0, 22.0, 60.0, 230.0, 0},
    {"temperature", 37.0, 0.7, 34.5, 41.5, 1},
};

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

GenConfig default_gen_config() {
  GenConfig c;
  for (const char* k : kWeightOne) c.keywords.push_back({k, 1});
  for (const char* k : kWeightTwo) c.keywords.push_back({k, 2});
  c.fillers.assign(std::begin(kFillers), std::end(kFillers));
  c.categorical.assign(std::begin(kCategorical), std::end(kCategorical));
  c.numeric.assign(std::begin(kNumeric), std::end(kNumeric));
  return c;
}

void GenConfig::validate() const {
  if (!(noise_rate >= 0.0 && noise_rate < 1.0)) throw ArgumentError("noise_rate must be in [0, 1)");
  if (!(missing_rate >= 0.0 && missing_rate < 1.0)) {
    throw ArgumentError("missing_rate must be in [0, 1)");
  }
  if (fillers.empty()) throw ArgumentError("at least one filler token is required");
  if (min_filler_tokens > max_filler_tokens) {
    throw ArgumentError("min_filler_tokens exceeds max_filler_tokens");
  }
  if (max_keywords > keywords.size()) {
    throw ArgumentError("max_keywords (" + std::to_string(max_keywords) + ") exceeds the " +
                        std::to_string(keywords.size()) + " available keywords");
  }
  std::set<std::string> seen;
  for (const auto& k : keywords) {
    if (k.weight != 1 && k.weight != 2) {
      throw ArgumentError("keyword '" + k.token + "' has weight " + std::to_string(k.weight) +
                          ", expected 1 or 2");
    }
    if (k.token.empty() || !seen.insert(k.token).second) {
      throw ArgumentError("keyword tokens must be nonempty and unique: '" + k.token + "'");
    }
  }
  for (const auto& f : fillers) {
    if (seen.count(f) != 0) throw ArgumentError("token '" + f + "' is both keyword and filler");
  }
  for (const auto& d : categorical) {
    if (d.values.empty() || d.values.size() != d.weights.size()) {
      throw ArgumentError("categorical distribution for '" + d.field + "' is malformed");
    }
    for (double w : d.weights)
      if (!(w >= 0.0)) throw ArgumentError("negative weight for '" + d.field + "'");
  }
  for (const auto& d : numeric) {
    if (!(d.lo <= d.hi) || !(d.stddev >= 0.0)) {
      throw ArgumentError("numeric distribution for '" + d.field + "' is malformed");
    }
  }
}

text::PatientRecord generate_record(const GenConfig& config, std::size_t index) {
  std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(index)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  text::PatientRecord r;
  r.id = "syn-" + std::to_string(index + 1);

  // Keywords: a distinct subset via a partial Fisher-Yates over indices.
  const std::size_t k = std::uniform_int_distribution<std::size_t>(0, config.max_keywords)(rng);
  std::vector<std::size_t> order(config.keywords.size());
  std::iota(order.begin(), order.end(), 0);
  int weight_sum = 0;
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = std::uniform_int_distribution<std::size_t>(i, order.size() - 1)(rng);
    std::swap(order[i], order[j]);
    tokens.push_back(config.keywords[order[i]].token);
    weight_sum += config.keywords[order[i]].weight;
  }
  const std::size_t fillers = std::uniform_int_distribution<std::size_t>(
      config.min_filler_tokens, config.max_filler_tokens)(rng);
  std::uniform_int_distribution<std::size_t> pick_filler(0, config.fillers.size() - 1);
  for (std::size_t i = 0; i < fillers; ++i) tokens.push_back(config.fillers[pick_filler(rng)]);
  std::shuffle(tokens.begin(), tokens.end(), rng);

  std::string* sections[] = {&r.note_cc, &r.note_pmh, &r.note_meds, &r.note_rn};
  std::uniform_int_distribution<int> pick_section(0, 3);
  for (const auto& t : tokens) {
    std::string& s = *sections[pick_section(rng)];
    if (!s.empty()) s += ' ';
    s += t;
  }

  for (const auto& d : config.categorical) {
    std::discrete_distribution<std::size_t> dist(d.weights.begin(), d.weights.end());
    const std::size_t v = dist(rng);
    if (unit(rng) < config.missing_rate) {
      r.structured[d.field] = std::monostate{};
    } else {
      r.structured[d.field] = d.values[v];
    }
  }
  for (const auto& d : config.numeric) {
    std::normal_distribution<double> dist(d.mean, d.stddev);
    const double scale = std::pow(10.0, d.decimals);
    const double v = std::round(std::clamp(dist(rng), d.lo, d.hi) * scale) / scale;
    if (unit(rng) < config.missing_rate) {
      r.structured[d.field] = std::monostate{};
    } else {
      r.structured[d.field] = v;
    }
  }

  int bump = 0;
  if (auto it = r.structured.find(config.bump_field); it != r.structured.end()) {
    if (const auto* s = std::get_if<std::string>(&it->second); s && *s == config.bump_value) {
      bump = 1;
    }
  }
  int outcome = std::min(5, weight_sum + bump);
  // Both draws happen on every record so noise_rate does not shift the stream.
  const double u = unit(rng);
  const int resampled = std::uniform_int_distribution<int>(0, 5)(rng);
  if (u < config.noise_rate) outcome = resampled;
  r.outcome = outcome;
  return r;
}

std::vector<text::PatientRecord> generate_corpus(const GenConfig& config) {
  config.validate();
  std::vector<text::PatientRecord> out;
  out.reserve(config.record_count);
  for (std::size_t i = 0; i < config.record_count; ++i) out.push_back(generate_record(config, i));
  return out;
}

}  // namespace dam::datagen
