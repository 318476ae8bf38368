#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace paxp::smt {

// Minimal SMT-LIB2 S-expression: an atom (symbol, numeral, keyword) or a
// list. Enough to write the encodings and read them (and solver models)
// back.
class SExpr {
public:
  SExpr() = default;
  static SExpr atom(std::string text);
  static SExpr list(std::vector<SExpr> items);

  template <class... Items>
  static SExpr call(std::string head, Items &&...items) {
    return list({atom(std::move(head)), SExpr(std::forward<Items>(items))...});
  }

  bool is_atom() const { return !is_list_; }
  bool is_list() const { return is_list_; }
  const std::string &text() const { return text_; }
  const std::vector<SExpr> &items() const { return items_; }
  bool is(std::string_view atom) const { return !is_list_ && text_ == atom; }
  // True for a list whose head atom equals `head`.
  bool headed(std::string_view head) const {
    return is_list_ && !items_.empty() && items_.front().is(head);
  }

  std::string str() const;
  void append_to(std::string &out) const;

private:
  bool is_list_ = false;
  std::string text_;
  std::vector<SExpr> items_;
};

// Parses a sequence of top-level S-expressions. ';' comments and |quoted|
// symbols are supported. Throws std::runtime_error on unbalanced input.
std::vector<SExpr> parse_sexprs(std::string_view text);

} // namespace paxp::smt
