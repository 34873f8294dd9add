#include "sensoryrec/conllu.h"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "sensoryrec/error.h"
#include "text.h"

namespace sensoryrec {

DepTree::DepTree(std::vector<DepToken> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty()) throw ParseError("empty sentence");
  const int n = static_cast<int>(tokens_.size());
  children_.assign(tokens_.size() + 1, {});
  for (int i = 0; i < n; ++i) {
    const DepToken& t = tokens_[i];
    if (t.id != i + 1) {
      throw ParseError(fmt::format("token ids must be 1..n in order; found {} "
                                   "at position {}",
                                   t.id, i + 1));
    }
    if (t.head < 0 || t.head > n) {
      throw ParseError(
          fmt::format("token {} has head {} outside the sentence", t.id, t.head));
    }
    if (t.head == t.id) {
      throw ParseError(fmt::format("cycle detected: token {} heads itself", t.id));
    }
    if (t.head == 0) {
      if (root_ != 0) {
        throw ParseError(
            fmt::format("multiple roots: tokens {} and {}", root_, t.id));
      }
      root_ = t.id;
    } else {
      children_[t.head].push_back(t.id);
    }
  }
  // Every node must reach head 0 by following heads.
  // 0 = unvisited, 1 = on current path, 2 = reaches head 0.
  std::vector<char> state(tokens_.size() + 1, 0);
  for (int start = 1; start <= n; ++start) {
    std::vector<int> path;
    int cur = start;
    while (state[cur] == 0) {
      state[cur] = 1;
      path.push_back(cur);
      cur = tokens_[cur - 1].head;
      if (cur == 0) break;
    }
    if (cur != 0 && state[cur] == 1) {
      throw ParseError(fmt::format("cycle detected through token {}", cur));
    }
    for (int id : path) state[id] = 2;
  }
  if (root_ == 0) throw ParseError("no root token (head = 0)");
}

const DepToken& DepTree::token(int id) const {
  if (!contains(id)) throw std::out_of_range(fmt::format("no token {}", id));
  return tokens_[id - 1];
}

const std::vector<int>& DepTree::children(int id) const {
  if (!contains(id)) throw std::out_of_range(fmt::format("no token {}", id));
  return children_[id];
}

std::vector<int> DepTree::subtree_ids(int node) const {
  if (!contains(node)) throw std::out_of_range(fmt::format("no token {}", node));
  std::vector<int> out;
  std::vector<int> stack = {node};
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    for (int c : children_[cur]) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int DepTree::depth_below(int ancestor, int node) const {
  if (!contains(ancestor) || !contains(node)) return -1;
  int depth = 0;
  for (int cur = node; cur != 0; cur = tokens_[cur - 1].head) {
    if (cur == ancestor) return depth;
    ++depth;
  }
  return -1;
}

namespace {

struct Block {
  std::size_t first_line = 0;  // 1-based
  std::vector<std::pair<std::size_t, std::string_view>> lines;
};

std::vector<Block> split_blocks(std::string_view text) {
  std::vector<Block> blocks;
  Block cur;
  const auto rows = internal::lines(text);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (internal::trim(rows[i]).empty()) {
      if (!cur.lines.empty()) blocks.push_back(std::move(cur));
      cur = Block{};
      continue;
    }
    if (cur.lines.empty()) cur.first_line = i + 1;
    cur.lines.emplace_back(i + 1, rows[i]);
  }
  if (!cur.lines.empty()) blocks.push_back(std::move(cur));
  return blocks;
}

// Parses "# key = value"; returns false for other comments.
bool metadata(std::string_view comment, std::string_view& key,
              std::string_view& value) {
  comment.remove_prefix(1);  // '#'
  const std::size_t eq = comment.find('=');
  if (eq == std::string_view::npos) return false;
  key = internal::trim(comment.substr(0, eq));
  value = internal::trim(comment.substr(eq + 1));
  return true;
}

int parse_field_int(std::string_view s, std::size_t line_no,
                    std::string_view what) {
  const auto v = internal::parse_int(s);
  if (!v || *v < 0 || *v > 1'000'000) {
    throw ParseError(fmt::format("line {}: {} '{}' is not a valid integer",
                                 line_no, what, s));
  }
  return static_cast<int>(*v);
}

}  // namespace

std::vector<ReviewDoc> parse_conllu(std::string_view text) {
  std::vector<ReviewDoc> docs;
  std::map<std::pair<std::string, std::string>, std::size_t> doc_index;
  std::optional<std::size_t> current;
  std::size_t sentence_index = 1;  // 1-based, for messages

  for (const Block& block : split_blocks(text)) {
    std::string item_id;
    std::string review_id;
    bool has_item = false;
    bool has_review = false;
    std::vector<DepToken> tokens;

    for (const auto& [line_no, line] : block.lines) {
      if (line.front() == '#') {
        std::string_view key, value;
        if (!metadata(line, key, value)) continue;
        if (key == "item_id") {
          item_id = std::string(value);
          has_item = true;
        } else if (key == "review_id") {
          review_id = std::string(value);
          has_review = true;
        }
        continue;
      }
      const auto cols = internal::split(line, '\t');
      if (cols.size() != 10) {
        throw ParseError(fmt::format("line {}: expected 10 columns, got {}",
                                     line_no, cols.size()));
      }
      // Multiword tokens (1-2) and empty nodes (1.1) are not tree nodes.
      if (cols[0].find_first_of("-.") != std::string_view::npos) continue;
      DepToken t;
      t.id = parse_field_int(cols[0], line_no, "token id");
      if (t.id < 1) {
        throw ParseError(fmt::format("line {}: token id must be >= 1", line_no));
      }
      t.form = std::string(cols[1]);
      t.lemma = std::string(cols[2]);
      t.upos = std::string(cols[3]);
      t.xpos = std::string(cols[4]);
      t.feats = std::string(cols[5]);
      t.head = parse_field_int(cols[6], line_no, "head");
      t.deprel = std::string(cols[7]);
      t.deps = std::string(cols[8]);
      t.misc = std::string(cols[9]);
      tokens.push_back(std::move(t));
    }

    if (has_item != has_review || (has_item && (item_id.empty() ||
                                                review_id.empty()))) {
      throw ParseError(fmt::format(
          "block at line {}: both '# item_id' and '# review_id' must be set",
          block.first_line));
    }
    if (has_item) {
      auto key = std::make_pair(item_id, review_id);
      auto it = doc_index.find(key);
      if (it == doc_index.end()) {
        it = doc_index.emplace(key, docs.size()).first;
        docs.push_back(ReviewDoc{item_id, review_id, {}});
      }
      current = it->second;
    }
    if (tokens.empty()) continue;  // metadata-only block
    if (!current) {
      throw ParseError(fmt::format(
          "block at line {}: sentence has no '# item_id' / '# review_id' "
          "metadata",
          block.first_line));
    }
    try {
      docs[*current].sentences.emplace_back(std::move(tokens));
    } catch (const ParseError& e) {
      throw ParseError(fmt::format("sentence {} (block at line {}): {}",
                                   sentence_index, block.first_line, e.what()));
    }
    ++sentence_index;
  }
  return docs;
}

std::vector<ReviewDoc> load_conllu(const std::filesystem::path& path) {
  const std::string text = internal::read_file(path);
  try {
    return parse_conllu(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string write_conllu(const std::vector<ReviewDoc>& docs) {
  std::string out;
  for (const ReviewDoc& doc : docs) {
    bool first = true;
    for (const DepTree& tree : doc.sentences) {
      if (first) {
        out += fmt::format("# item_id = {}\n# review_id = {}\n", doc.item_id,
                           doc.review_id);
        first = false;
      }
      for (const DepToken& t : tree.tokens()) {
        out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", t.id,
                           t.form, t.lemma, t.upos, t.xpos, t.feats, t.head,
                           t.deprel, t.deps, t.misc);
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace sensoryrec
