#include "occlang/lexicon.hpp"

#include <algorithm>
#include <sstream>

#include "occlang/util.hpp"

namespace occlang {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> parts;
  std::string part;
  for (char c : line) {
    if (c == '\t') {
      parts.push_back(part);
      part.clear();
    } else {
      part += c;
    }
  }
  parts.push_back(part);
  // Collapse runs of tabs and trim stray spaces.
  std::vector<std::string> out;
  for (auto& p : parts) {
    while (!p.empty() && (p.back() == ' ' || p.back() == '\r')) p.pop_back();
    std::size_t start = 0;
    while (start < p.size() && p[start] == ' ') ++start;
    p.erase(0, start);
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

}  // namespace

Lexicon Lexicon::parse_text(const std::string& text, const std::string& source) {
  Lexicon lex;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  int percent_seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t')) {
      trimmed.pop_back();
    }
    if (trimmed.empty()) continue;
    if (trimmed == "%") {
      ++percent_seen;
      if (percent_seen == 2 && lex.categories_.empty()) {
        throw Error(source + ": empty category section");
      }
      continue;
    }
    const std::vector<std::string> parts = split_tabs(line);
    if (parts.empty()) continue;
    if (percent_seen == 1) {
      if (parts.size() < 2) {
        throw Error(source + ": line " + std::to_string(lineno) +
                    ": expected \"id<TAB>name\"");
      }
      int id = 0;
      try {
        id = std::stoi(parts[0]);
      } catch (...) {
        throw Error(source + ": line " + std::to_string(lineno) + ": bad category id \"" +
                    parts[0] + "\"");
      }
      if (!lex.categories_.emplace(id, parts[1]).second) {
        throw Error(source + ": line " + std::to_string(lineno) + ": duplicate category id " +
                    std::to_string(id));
      }
    } else if (percent_seen >= 2) {
      if (parts.size() < 2) {
        throw Error(source + ": line " + std::to_string(lineno) +
                    ": expected \"pattern<TAB>id...\"");
      }
      std::string pattern = lower_ascii(parts[0]);
      std::vector<int> cats;
      for (std::size_t i = 1; i < parts.size(); ++i) {
        int id = 0;
        try {
          id = std::stoi(parts[i]);
        } catch (...) {
          throw Error(source + ": line " + std::to_string(lineno) + ": bad category id \"" +
                      parts[i] + "\"");
        }
        if (!lex.categories_.count(id)) {
          throw Error(source + ": line " + std::to_string(lineno) +
                      ": unknown category id " + std::to_string(id));
        }
        cats.push_back(id);
      }
      std::sort(cats.begin(), cats.end());
      cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
      if (!pattern.empty() && pattern.back() == '*') {
        pattern.pop_back();
        lex.wildcard_[pattern] = std::move(cats);
      } else {
        lex.exact_[pattern] = std::move(cats);
      }
      ++lex.n_patterns_;
    } else {
      throw Error(source + ": line " + std::to_string(lineno) +
                  ": content before the category section ('%')");
    }
  }
  if (percent_seen < 2) throw Error(source + ": missing category section delimiters ('%')");
  if (lex.categories_.empty()) throw Error(source + ": empty category section");
  return lex;
}

Lexicon Lexicon::parse(const std::string& path) {
  return parse_text(read_file(path), path);
}

const std::vector<int>& Lexicon::match(const std::string& word) const {
  static const std::vector<int> kNone;
  const auto exact = exact_.find(word);
  if (exact != exact_.end()) return exact->second;
  // Longest wildcard prefix wins.
  for (std::size_t len = word.size(); len > 0; --len) {
    const auto it = wildcard_.find(word.substr(0, len));
    if (it != wildcard_.end()) return it->second;
  }
  const auto empty_prefix = wildcard_.find(std::string());
  if (empty_prefix != wildcard_.end()) return empty_prefix->second;
  return kNone;
}

std::vector<std::string> Lexicon::feature_names() const {
  std::vector<std::string> names = {"WC", "Sixltr", "Exclam", "Parenth"};
  for (const auto& [id, name] : categories_) {
    (void)id;
    names.push_back(name);
  }
  return names;
}

double FeatureVector::at(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return values[i];
  }
  throw Error("unknown feature: " + name);
}

FeatureVector extract_features(const std::vector<Token>& tokens, const Lexicon& lexicon) {
  FeatureVector out;
  out.names = lexicon.feature_names();
  out.values.assign(out.names.size(), 0.0);

  std::vector<std::string> words;
  std::size_t exclam = 0;
  std::size_t parenth = 0;
  for (const auto& tok : tokens) {
    if (tok.kind == TokenKind::word) {
      words.push_back(tok.surface);
    } else if (tok.kind == TokenKind::hashtag) {
      words.push_back(tok.surface.substr(1));
    } else if (tok.surface == "!") {
      ++exclam;
    } else if (tok.surface == "(" || tok.surface == ")") {
      ++parenth;
    }
  }

  std::map<int, std::size_t> category_hits;
  std::size_t six_letter = 0;
  for (const auto& word : words) {
    std::size_t letters = 0;
    for (char c : word) {
      if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) ++letters;
    }
    if (letters > 6) ++six_letter;
    for (int cat : lexicon.match(word)) ++category_hits[cat];
  }

  const double word_count = static_cast<double>(words.size());
  const double token_count = static_cast<double>(tokens.size());
  out.values[0] = word_count;
  out.values[1] = word_count > 0 ? 100.0 * static_cast<double>(six_letter) / word_count : 0.0;
  out.values[2] = token_count > 0 ? 100.0 * static_cast<double>(exclam) / token_count : 0.0;
  out.values[3] = token_count > 0 ? 100.0 * static_cast<double>(parenth) / token_count : 0.0;
  std::size_t idx = 4;
  for (const auto& [id, name] : lexicon.categories()) {
    (void)name;
    const auto it = category_hits.find(id);
    const double hits = it == category_hits.end() ? 0.0 : static_cast<double>(it->second);
    out.values[idx++] = word_count > 0 ? 100.0 * hits / word_count : 0.0;
  }
  return out;
}

FeatureMatrix lexicon_feature_matrix(const Corpus& corpus, const Lexicon& lexicon,
                                     const EmojiTable& emoji) {
  FeatureMatrix fm;
  for (const auto& name : lexicon.feature_names()) fm.names.push_back("lex:" + name);
  fm.values = RowMatrix(corpus.users.size(), fm.names.size());
  fm.row_ids.reserve(corpus.users.size());
  for (std::size_t u = 0; u < corpus.users.size(); ++u) {
    fm.row_ids.push_back(corpus.users[u].user_id);
    const FeatureVector fv =
        extract_features(tokenize(aggregate_document(corpus.users[u]), emoji), lexicon);
    for (std::size_t c = 0; c < fv.values.size(); ++c) fm.values.at(u, c) = fv.values[c];
  }
  return fm;
}

}  // namespace occlang
