#ifndef SENSORYREC_CONLLU_H_
#define SENSORYREC_CONLLU_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sensoryrec {

// One word line of a CoNLL-U sentence. Only id, form, lemma, upos, head and
// deprel are interpreted; the other four columns are carried verbatim.
struct DepToken {
  int id = 0;  // 1-based within the sentence
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos = "_";
  std::string feats = "_";
  int head = 0;  // 0 = root
  std::string deprel;
  std::string deps = "_";
  std::string misc = "_";
};

// A validated dependency tree: ids are 1..n in order, exactly one root, and
// head links are acyclic.
class DepTree {
 public:
  // Throws ParseError when the tokens do not form a tree.
  explicit DepTree(std::vector<DepToken> tokens);

  std::size_t size() const { return tokens_.size(); }
  int root() const { return root_; }
  const std::vector<DepToken>& tokens() const { return tokens_; }
  // Throws std::out_of_range for an id not in the tree.
  const DepToken& token(int id) const;
  const std::vector<int>& children(int id) const;
  bool contains(int id) const {
    return id >= 1 && static_cast<std::size_t>(id) <= tokens_.size();
  }

  // `node` and all of its transitive descendants, sorted ascending.
  std::vector<int> subtree_ids(int node) const;

  // Number of head links between `ancestor` and `node`, or -1 if `node` is
  // not in the subtree of `ancestor`.
  int depth_below(int ancestor, int node) const;

 private:
  std::vector<DepToken> tokens_;
  std::vector<std::vector<int>> children_;  // indexed by id; slot 0 unused
  int root_ = 0;
};

struct ReviewDoc {
  std::string item_id;
  std::string review_id;
  std::vector<DepTree> sentences;
};

// Parses the CoNLL-U subset: ten tab-separated columns, sentences separated by
// blank lines, '#' comments. A sentence block that carries
// `# item_id = ...` and `# review_id = ...` starts (or resumes) that review;
// blocks without metadata continue the previous review. Multiword-token and
// empty-node lines are skipped. One ReviewDoc per (item_id, review_id), in
// order of first appearance.
std::vector<ReviewDoc> parse_conllu(std::string_view text);
std::vector<ReviewDoc> load_conllu(const std::filesystem::path& path);

// Inverse of parse_conllu on the fields it reads.
std::string write_conllu(const std::vector<ReviewDoc>& docs);

}  // namespace sensoryrec

#endif  // SENSORYREC_CONLLU_H_
