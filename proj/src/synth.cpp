#include "occlang/synth.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>

#include "occlang/util.hpp"

namespace occlang {

namespace {

using nlohmann::json;

class WeightedSampler {
 public:
  explicit WeightedSampler(const std::vector<std::pair<std::string, double>>& items)
      : items_(&items) {
    double total = 0.0;
    cumulative_.reserve(items.size());
    for (const auto& [name, weight] : items) {
      (void)name;
      if (weight < 0.0 || !std::isfinite(weight)) {
        throw Error("synthetic spec: negative or non-finite weight");
      }
      total += weight;
      cumulative_.push_back(total);
    }
    if (!(total > 0.0)) throw Error("synthetic spec: distribution is not normalizable");
  }

  std::size_t draw(Rng& rng) const {
    const double target = rng.uniform01() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    return std::min(static_cast<std::size_t>(it - cumulative_.begin()),
                    cumulative_.size() - 1);
  }

  const std::string& name(std::size_t i) const { return (*items_)[i].first; }
  std::size_t size() const { return cumulative_.size(); }

 private:
  const std::vector<std::pair<std::string, double>>* items_;
  std::vector<double> cumulative_;
};

std::string slug(const std::string& name) {
  std::string out;
  for (char c : name) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) out += c;
    else if (c >= 'A' && c <= 'Z') out += static_cast<char>(c - 'A' + 'a');
    else if (!out.empty() && out.back() != '_') out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "archetype" : out;
}

}  // namespace

void SynthSpec::validate() const {
  if (archetypes.empty()) throw Error("synthetic spec: no archetypes");
  if (users_per_archetype < 1 || tweets_per_user < 1 || tokens_per_tweet < 1) {
    throw Error("synthetic spec: counts must be positive");
  }
  if (background_mix < 0.0 || background_mix > 1.0) {
    throw Error("synthetic spec: background_mix must be in [0, 1]");
  }
  if (background_mix > 0.0 && background_terms.empty()) {
    throw Error("synthetic spec: background_mix > 0 requires background terms");
  }
  if (skills_per_user < 1 || endorsements_per_user < 1) {
    throw Error("synthetic spec: skill settings must be positive");
  }
  for (const auto& a : archetypes) {
    if (a.name.empty()) throw Error("synthetic spec: archetype without a name");
    WeightedSampler check_skills(a.skills);
    WeightedSampler check_terms(a.terms);
  }
  if (!background_terms.empty()) WeightedSampler check_bg(background_terms);
}

SynthResult generate_synthetic(const SynthSpec& spec, std::uint64_t seed) {
  spec.validate();
  SynthResult result;
  result.corpus.source_path = "synthetic";
  for (std::size_t a = 0; a < spec.archetypes.size(); ++a) {
    const Archetype& arch = spec.archetypes[a];
    const WeightedSampler skill_sampler(arch.skills);
    const WeightedSampler term_sampler(arch.terms);
    std::optional<WeightedSampler> bg_sampler;
    if (!spec.background_terms.empty()) bg_sampler.emplace(spec.background_terms);

    for (int u = 0; u < spec.users_per_archetype; ++u) {
      Rng rng(seed_mix(seed, a, static_cast<std::uint64_t>(u)));
      UserRecord user;
      {
        std::ostringstream id;
        id << slug(arch.name) << '_';
        if (u < 10) id << '0';
        id << u;
        user.user_id = id.str();
      }

      // Skills: weighted draw without replacement, then one guaranteed vote
      // each and the remaining endorsements distributed by weight.
      const int n_skills =
          std::min<int>(spec.skills_per_user, static_cast<int>(arch.skills.size()));
      std::vector<std::size_t> picked;
      while (static_cast<int>(picked.size()) < n_skills) {
        const std::size_t idx = skill_sampler.draw(rng);
        if (std::find(picked.begin(), picked.end(), idx) == picked.end()) {
          picked.push_back(idx);
        }
      }
      std::vector<std::pair<std::string, double>> picked_weights;
      for (std::size_t idx : picked) picked_weights.push_back(arch.skills[idx]);
      const WeightedSampler vote_sampler(picked_weights);
      for (std::size_t idx : picked) user.skills[arch.skills[idx].first] = 1;
      for (int vote = n_skills; vote < spec.endorsements_per_user; ++vote) {
        const std::size_t idx = vote_sampler.draw(rng);
        ++user.skills[picked_weights[idx].first];
      }

      // Tweets: a mixture of archetype language and shared background terms;
      // multi-word terms are emitted as consecutive tokens.
      for (int t = 0; t < spec.tweets_per_user; ++t) {
        std::vector<std::string> parts;
        for (int tok = 0; tok < spec.tokens_per_tweet; ++tok) {
          const bool background = bg_sampler && rng.uniform01() < spec.background_mix;
          if (background) {
            parts.push_back(bg_sampler->name(bg_sampler->draw(rng)));
          } else {
            parts.push_back(term_sampler.name(term_sampler.draw(rng)));
          }
        }
        user.tweets.push_back(join(parts, " "));
      }

      if (spec.emit_traits && !arch.trait_means.empty()) {
        std::map<std::string, double> traits;
        for (const auto& [name, mean] : arch.trait_means) {
          const double noise = (rng.uniform01() * 2.0 - 1.0) * spec.trait_noise;
          traits[name] = std::clamp(mean + noise, 0.0, 1.0);
        }
        user.traits = std::move(traits);
      }

      result.truth[user.user_id] = arch.name;
      result.corpus.users.push_back(std::move(user));
    }
  }
  return result;
}

void write_synthetic(const SynthResult& result, const std::string& corpus_path,
                     const std::string& truth_path) {
  write_corpus(result.corpus, corpus_path);
  nlohmann::ordered_json truth;
  for (const auto& [user_id, archetype] : result.truth) truth[user_id] = archetype;
  write_file(truth_path, truth.dump(2) + "\n");
}

namespace {

std::vector<std::pair<std::string, double>> weighted_list(const json& obj,
                                                          const std::string& what) {
  std::vector<std::pair<std::string, double>> out;
  if (!obj.is_object()) throw Error("synthetic spec: " + what + " must be an object");
  for (const auto& [name, weight] : obj.items()) {
    if (!weight.is_number()) throw Error("synthetic spec: " + what + " weights must be numbers");
    out.emplace_back(name, weight.get<double>());
  }
  return out;
}

}  // namespace

SynthSpec SynthSpec::jobs8() {
  SynthSpec spec;
  spec.users_per_archetype = 40;
  spec.tweets_per_user = 20;
  spec.tokens_per_tweet = 10;
  spec.background_mix = 0.45;
  spec.skills_per_user = 5;
  spec.endorsements_per_user = 40;
  spec.trait_noise = 0.05;
  spec.background_terms = {
      {"today", 3},  {"time", 3},  {"good", 3},    {"day", 3},    {"new", 3},
      {"people", 2}, {"love", 2},  {"great", 2},   {"one", 2},    {"going", 2},
      {"back", 2},   {"still", 2}, {"think", 2},   {"know", 2},   {"really", 2},
      {"right", 2},  {"well", 2},  {"much", 2},    {"thanks", 2}, {"happy", 2},
      {"week", 1},   {"night", 1}, {"morning", 1}, {"best", 1},   {"world", 1},
  };

  auto add = [&spec](std::string name,
                     std::vector<std::pair<std::string, double>> skills,
                     std::vector<std::pair<std::string, double>> terms,
                     std::array<double, 5> ocean) {
    Archetype arch;
    arch.name = std::move(name);
    arch.skills = std::move(skills);
    arch.terms = std::move(terms);
    arch.trait_means = {{"openness", ocean[0]},
                        {"conscientiousness", ocean[1]},
                        {"extraversion", ocean[2]},
                        {"agreeableness", ocean[3]},
                        {"neuroticism", ocean[4]}};
    spec.archetypes.push_back(std::move(arch));
  };

  add("Marketing",
      {{"Digital Marketing", 10}, {"Social Media Marketing", 9}, {"Online Marketing", 8},
       {"Digital Strategy", 7},   {"Advertising", 6},            {"SEO", 5},
       {"Branding", 4}},
      {{"marketers", 2}, {"marketing", 2}, {"brand", 1},           {"brands", 1},
       {"campaigns", 1}, {"social media", 2}, {"your brand", 1},   {"targeting", 1},
       {"lead generation", 1}, {"seo", 1},  {"analytics", 1},      {"market", 1},
       {"pay", 1},       {"price", 1},     {"cash", 1},            {"invest", 1},
       {"revenue", 1},   {"fun", 1},       {"party", 1},           {"music", 1},
       {"vacation", 1},  {"#marketing", 1}, {":)", 1}},
      {0.60, 0.62, 0.55, 0.52, 0.41});

  add("Administrator",
      {{"Public Speaking", 10}, {"Leadership", 9},     {"Fundraising", 8},
       {"Event Planning", 7},   {"Coaching", 6},       {"Nonprofits", 5},
       {"Community Outreach", 4}},
      {{"we", 3},        {"we must", 1},  {"we need to", 1}, {"our", 2},
       {"us", 1},        {"leaders", 2},  {"leadership", 2}, {"leader", 1},
       {"lead", 1},      {"director", 1}, {"manage", 1},     {"students", 1},
       {"youth", 1},     {"college", 1},  {"pray", 1},       {"blessing", 1},
       {"god's", 1},     {"worship", 1},  {"bible", 1},      {"church", 1},
       {"honor", 1},     {"courage", 1},  {"make a difference", 1}, {"#education", 1}},
      {0.45, 0.52, 0.68, 0.62, 0.48});

  add("Start-up",
      {{"Start-ups", 10},   {"Entrepreneurship", 9}, {"Strategy", 8},
       {"Business Development", 7}, {"Management", 6}, {"Venture Capital", 5},
       {"Product Management", 4}},
      {{"founders", 2},  {"investors", 2}, {"startups", 2},  {"funding", 1},
       {"valuation", 1}, {"growth", 1},    {"silicon", 1},   {"companies", 1},
       {"business model", 1}, {"work", 2}, {"working", 1},   {"project", 1},
       {"deadline", 1},  {"meeting", 1},   {"hiring", 1},    {"money", 1},
       {"revenue", 1},   {"budget", 1},    {"bitcoin", 1},   {"crowdfunding", 1},
       {"#startup", 1}},
      {0.66, 0.64, 0.55, 0.50, 0.33});

  add("Editor&Writer",
      {{"Blogging", 10},    {"Editing", 9},          {"Journalism", 8},
       {"Copy Editing", 7}, {"Storytelling", 6},     {"Creative Writing", 5},
       {"Publishing", 4}},
      {{"editors", 2},   {"journalist", 2}, {"writer", 2},   {"reporter", 1},
       {"headline", 1},  {"newspaper", 1},  {"pulitzer", 1}, {"story", 1},
       {"books", 1},     {"novel", 1},      {"she", 2},      {"her", 2},
       {"woman", 1},     {"girl", 1},       {"he", 1},       {"him", 1},
       {"man", 1},       {"murder", 1},     {"investigation", 1}, {"police", 1},
       {"sad", 1},       {"awful", 1},      {"worst", 1},    {"#books", 1},
       {";)", 1}},
      {0.55, 0.45, 0.48, 0.50, 0.53});

  add("Software Engr",
      {{"MySQL", 10}, {"CSS", 9},    {"JavaScript", 8}, {"PHP", 7},
       {"jQuery", 6}, {"Python", 5}, {"Git", 4}},
      {{"code", 2},    {"coding", 1},  {"api", 1},       {"github", 1},
       {"python", 1},  {"java", 1},    {"php", 1},       {"javascript", 1},
       {"jquery", 1},  {"mysql", 1},   {"css", 1},       {"plugin", 1},
       {"server", 1},  {"bug", 1},     {"ui", 1},        {"pull request", 1},
       {"open source", 1}, {"maybe", 2}, {"perhaps", 1}, {"probably", 1},
       {"guess", 1},   {"seems", 1},   {"might", 1},     {"damn", 1},
       {"hell", 1},    {"crap", 1},    {"wtf", 1},       {"#code", 1}},
      {0.60, 0.46, 0.36, 0.42, 0.55});

  add("Office Clerk",
      {{"Microsoft Office", 10}, {"Microsoft Excel", 9}, {"PowerPoint", 8},
       {"Microsoft Word", 7},    {"Customer Service", 6}, {"Data Entry", 5},
       {"Filing", 4}},
      {{"i", 3},         {"my", 2},       {"me", 2},        {"my life", 2},
       {"myself", 1},    {"woke up", 1},  {"fall asleep", 1}, {"my hair", 1},
       {"homework", 1},  {"semester", 1}, {"studying", 1},  {"never", 1},
       {"dont", 1},      {"cant", 1},     {"didnt", 1},     {"not", 1},
       {"hate", 2},      {"tired", 1},    {"sad", 1},       {"jealous", 1},
       {"bloody", 1},    {":(", 1},       {"😩", 1}},
      {0.44, 0.40, 0.50, 0.66, 0.65});

  add("Public Relation",
      {{"Public Relations", 10},        {"Media Relations", 9},
       {"Press Releases", 8},           {"Strategic Communications", 7},
       {"Corporate Communications", 6}, {"Crisis Communications", 5},
       {"Event Management", 4}},
      {{"pr", 2},        {"#pr", 1},      {"public relations", 2}, {"press releases", 1},
       {"press release", 1}, {"media", 1}, {"crisis", 1},    {"anniversary", 1},
       {"super bowl", 1}, {"will", 2},    {"soon", 2},       {"tomorrow", 1},
       {"gonna", 1},     {"upcoming", 1}, {"monday", 1},     {"friday", 1},
       {"tonight", 1},   {"of the year", 1}, {"!", 3},       {"#media", 1}},
      {0.38, 0.55, 0.58, 0.55, 0.48});

  add("Designer",
      {{"Graphic Design", 10}, {"Web Design", 9}, {"Photography", 8},
       {"Illustrator", 7},     {"Photoshop", 6},  {"Typography", 5},
       {"InDesign", 4}},
      {{"designer", 2},  {"illustrator", 2}, {"graphic", 2},  {"design", 1},
       {"font", 1},      {"fonts", 1},       {"logo", 1},     {"icon", 1},
       {"typography", 1}, {"lettering", 1},  {"photoshop", 1}, {"behance", 1},
       {"color", 1},     {"colors", 1},      {"blue", 1},     {"red", 1},
       {"black and white", 1}, {"see", 1},   {"seen", 1},     {"look", 1},
       {"watch", 1},     {"feel", 1},        {"beautiful", 1}, {"cute", 1},
       {"nice", 1},      {"sweet", 1},       {"nyc", 1},      {"#design", 1},
       {"🎨", 1}},
      {0.58, 0.45, 0.48, 0.52, 0.55});

  return spec;
}

SynthSpec SynthSpec::load(const std::string& path) {
  json obj;
  try {
    obj = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error("synthetic spec " + path + ": invalid JSON: " + e.what());
  }
  SynthSpec spec;
  spec.users_per_archetype = obj.value("users_per_archetype", spec.users_per_archetype);
  spec.tweets_per_user = obj.value("tweets_per_user", spec.tweets_per_user);
  spec.tokens_per_tweet = obj.value("tokens_per_tweet", spec.tokens_per_tweet);
  spec.background_mix = obj.value("background_mix", spec.background_mix);
  spec.skills_per_user = obj.value("skills_per_user", spec.skills_per_user);
  spec.endorsements_per_user = obj.value("endorsements_per_user", spec.endorsements_per_user);
  spec.trait_noise = obj.value("trait_noise", spec.trait_noise);
  spec.emit_traits = obj.value("emit_traits", spec.emit_traits);
  if (obj.contains("background_terms")) {
    spec.background_terms = weighted_list(obj["background_terms"], "background_terms");
  }
  if (!obj.contains("archetypes") || !obj["archetypes"].is_array()) {
    throw Error("synthetic spec " + path + ": missing archetypes array");
  }
  for (const auto& entry : obj["archetypes"]) {
    Archetype arch;
    arch.name = entry.value("name", "");
    arch.skills = weighted_list(entry.value("skills", json::object()), "skills");
    arch.terms = weighted_list(entry.value("terms", json::object()), "terms");
    if (entry.contains("traits")) {
      for (const auto& [name, mean] : entry["traits"].items()) {
        arch.trait_means[name] = mean.get<double>();
      }
    }
    spec.archetypes.push_back(std::move(arch));
  }
  spec.validate();
  return spec;
}

}  // namespace occlang
