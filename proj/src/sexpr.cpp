#include "paxp/smt/sexpr.hpp"

#include <cctype>
#include <stdexcept>

namespace paxp::smt {

SExpr SExpr::atom(std::string text) {
  SExpr e;
  e.text_ = std::move(text);
  return e;
}

SExpr SExpr::list(std::vector<SExpr> items) {
  SExpr e;
  e.is_list_ = true;
  e.items_ = std::move(items);
  return e;
}

void SExpr::append_to(std::string &out) const {
  if (!is_list_) {
    out += text_;
    return;
  }
  out += '(';
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i > 0) out += ' ';
    items_[i].append_to(out);
  }
  out += ')';
}

std::string SExpr::str() const {
  std::string out;
  append_to(out);
  return out;
}

std::vector<SExpr> parse_sexprs(std::string_view text) {
  std::vector<SExpr> top;
  std::vector<std::vector<SExpr>> open;
  auto emit = [&](SExpr e) {
    if (open.empty()) {
      top.push_back(std::move(e));
    } else {
      open.back().push_back(std::move(e));
    }
  };

  std::size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (ch == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (ch == '(') {
      open.emplace_back();
      ++i;
    } else if (ch == ')') {
      if (open.empty()) {
        throw std::runtime_error("unbalanced ')' in SMT-LIB text");
      }
      auto items = std::move(open.back());
      open.pop_back();
      emit(SExpr::list(std::move(items)));
      ++i;
    } else if (ch == '|') {
      std::size_t end = text.find('|', i + 1);
      if (end == std::string_view::npos) {
        throw std::runtime_error("unterminated quoted symbol in SMT-LIB text");
      }
      emit(SExpr::atom(std::string(text.substr(i + 1, end - i - 1))));
      i = end + 1;
    } else if (ch == '"') {
      std::size_t end = i + 1;
      while (end < text.size() && text[end] != '"') ++end;
      if (end == text.size()) {
        throw std::runtime_error("unterminated string literal in SMT-LIB text");
      }
      emit(SExpr::atom(std::string(text.substr(i, end - i + 1))));
      i = end + 1;
    } else {
      std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '(' && text[i] != ')' && text[i] != ';') {
        ++i;
      }
      emit(SExpr::atom(std::string(text.substr(start, i - start))));
    }
  }
  if (!open.empty()) {
    throw std::runtime_error("unbalanced '(' in SMT-LIB text");
  }
  return top;
}

} // namespace paxp::smt
