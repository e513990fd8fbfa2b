#include "occlang/corpus.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "occlang/util.hpp"

namespace occlang {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

UserRecord parse_user_line(const std::string& line, std::size_t lineno) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::exception& e) {
    throw Error("line " + std::to_string(lineno) + ": invalid JSON: " + e.what());
  }
  if (!obj.is_object()) {
    throw Error("line " + std::to_string(lineno) + ": expected a JSON object");
  }
  if (!obj.contains("user_id") || !obj["user_id"].is_string() ||
      obj["user_id"].get<std::string>().empty()) {
    throw Error("line " + std::to_string(lineno) + ": missing user_id");
  }
  UserRecord user;
  user.user_id = obj["user_id"].get<std::string>();
  if (obj.contains("tweets")) {
    if (!obj["tweets"].is_array()) {
      throw Error("line " + std::to_string(lineno) + ": tweets must be an array");
    }
    for (const auto& t : obj["tweets"]) {
      if (!t.is_string()) {
        throw Error("line " + std::to_string(lineno) + ": tweets must contain strings");
      }
      user.tweets.push_back(t.get<std::string>());
    }
  }
  if (obj.contains("skills")) {
    if (!obj["skills"].is_object()) {
      throw Error("line " + std::to_string(lineno) + ": skills must be an object");
    }
    for (const auto& [name, count] : obj["skills"].items()) {
      if (!count.is_number_integer() || count.get<long long>() < 0) {
        throw Error("line " + std::to_string(lineno) + ": skill \"" + name +
                    "\" must have a non-negative integer count");
      }
      user.skills[name] = count.get<long long>();
    }
  }
  if (obj.contains("traits") && !obj["traits"].is_null()) {
    if (!obj["traits"].is_object()) {
      throw Error("line " + std::to_string(lineno) + ": traits must be an object");
    }
    std::map<std::string, double> traits;
    for (const auto& [name, score] : obj["traits"].items()) {
      if (!score.is_number()) {
        throw Error("line " + std::to_string(lineno) + ": trait \"" + name +
                    "\" must be a number");
      }
      traits[name] = score.get<double>();
    }
    user.traits = std::move(traits);
  }
  return user;
}

}  // namespace

Corpus corpus_from_jsonl(const std::string& text, const std::string& source) {
  Corpus corpus;
  corpus.source_path = source;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    UserRecord user = parse_user_line(line, lineno);
    if (!seen.insert(user.user_id).second) {
      throw Error("line " + std::to_string(lineno) + ": duplicate user_id \"" +
                  user.user_id + "\"");
    }
    corpus.users.push_back(std::move(user));
  }
  return corpus;
}

Corpus load_corpus(const std::string& path) {
  return corpus_from_jsonl(read_file(path), path);
}

std::string corpus_to_jsonl(const Corpus& corpus) {
  std::ostringstream out;
  for (const auto& user : corpus.users) {
    ordered_json obj;
    obj["user_id"] = user.user_id;
    obj["tweets"] = user.tweets;
    obj["skills"] = ordered_json::object();
    for (const auto& [name, count] : user.skills) obj["skills"][name] = count;
    if (user.traits) {
      obj["traits"] = ordered_json::object();
      for (const auto& [name, score] : *user.traits) obj["traits"][name] = score;
    }
    out << obj.dump() << '\n';
  }
  return out.str();
}

void write_corpus(const Corpus& corpus, const std::string& path) {
  write_file(path, corpus_to_jsonl(corpus));
}

Corpus filter_users(const Corpus& corpus, long long min_tweets, bool require_skills) {
  if (min_tweets < 0) throw Error("filter_users: min_tweets must be >= 0");
  Corpus out;
  out.source_path = corpus.source_path;
  for (const auto& user : corpus.users) {
    if (static_cast<long long>(user.tweets.size()) < min_tweets) continue;
    if (require_skills && user.skills.empty()) continue;
    out.users.push_back(user);
  }
  return out;
}

std::string aggregate_document(const UserRecord& user) {
  return join(user.tweets, "\n");
}

}  // namespace occlang
