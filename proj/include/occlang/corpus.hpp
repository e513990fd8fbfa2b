#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace occlang {

/// One person: posts, endorsed skills, optional personality trait scores.
struct UserRecord {
  std::string user_id;
  std::vector<std::string> tweets;
  std::map<std::string, long long> skills;  // endorsement counts, >= 0
  std::optional<std::map<std::string, double>> traits;

  bool operator==(const UserRecord&) const = default;
};

struct Corpus {
  std::vector<UserRecord> users;
  std::string source_path;  // provenance; never written to artifacts

  std::size_t size() const { return users.size(); }
};

/// Reads UTF-8 JSON Lines, one UserRecord per line, in file order.
/// Malformed lines and duplicate user ids abort with the offending line.
Corpus load_corpus(const std::string& path);

/// Inverse of load_corpus for valid corpora; stable key order, one line per user.
void write_corpus(const Corpus& corpus, const std::string& path);

std::string corpus_to_jsonl(const Corpus& corpus);
Corpus corpus_from_jsonl(const std::string& text, const std::string& source);

/// Keeps users with at least `min_tweets` posts and, when `require_skills`,
/// a non-empty skill map. Relative order preserved.
Corpus filter_users(const Corpus& corpus, long long min_tweets, bool require_skills);

/// All posts joined with single newlines, in stored order.
std::string aggregate_document(const UserRecord& user);

}  // namespace occlang
