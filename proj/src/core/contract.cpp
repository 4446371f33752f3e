#include <algorithm>
#include <cctype>

#include "grg/error.hpp"
#include "grg/tensor.hpp"

namespace grg {

namespace {

struct Slot {
  char letter;
  int sign;
};

struct Parsed {
  TensorField* tensor;
  std::vector<Slot> slots;
};

std::vector<Slot> parse_pattern(const std::string& pattern) {
  std::vector<Slot> out;
  int sign = 1;
  for (char c : pattern) {
    if (c == '-') {
      sign = -1;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      out.push_back({c, sign});
      sign = 1;
    } else if (c != ' ' && c != ',') {
      throw IndexError(std::string("bad character '") + c + "' in index pattern '" + pattern + "'");
    }
  }
  return out;
}

class Contraction {
 public:
  Contraction(Session& s, const std::vector<Factor>& factors, const std::map<char, int>& fixed)
      : dim_(s.dim()), values_(fixed) {
    for (const auto& f : factors) {
      Parsed p{f.tensor, parse_pattern(f.pattern)};
      if (static_cast<int>(p.slots.size()) != f.tensor->rank()) {
        throw IndexError("pattern '" + f.pattern + "' does not match the rank of '" + f.tensor->name() + "'");
      }
      factors_.push_back(std::move(p));
    }
    // Small factors first so that sparse ones (Ricci-like) prune early.
    std::stable_sort(factors_.begin(), factors_.end(),
                     [](const Parsed& a, const Parsed& b) { return a.slots.size() < b.slots.size(); });

    std::map<char, int> count;
    for (const auto& f : factors_) {
      for (const auto& sl : f.slots) {
        if (!values_.count(sl.letter) && count[sl.letter]++ == 0) vars_.push_back(sl.letter);
      }
    }
    for (char v : vars_) {
      if (count[v] < 2) throw IndexError(std::string("index '") + v + "' is neither summed nor fixed");
    }

    ready_.resize(vars_.size() + 1);
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      std::size_t level = 0;
      for (const auto& sl : factors_[k].slots) {
        auto it = std::find(vars_.begin(), vars_.end(), sl.letter);
        if (it != vars_.end()) level = std::max(level, static_cast<std::size_t>(it - vars_.begin()) + 1);
      }
      ready_[level].push_back(k);
    }
  }

  Expr run(Session& s) {
    std::vector<Expr> current;
    dfs(0, current);
    return s.simplify(Expr::sum(std::move(terms_)));
  }

 private:
  bool evaluate_ready(std::size_t level, std::vector<Expr>& current) {
    for (std::size_t k : ready_[level]) {
      const auto& f = factors_[k];
      IndexTuple idx;
      for (const auto& sl : f.slots) idx.push_back(sl.sign * values_.at(sl.letter));
      Expr v = f.tensor->component(idx);
      if (v.is_zero()) return false;
      current.push_back(std::move(v));
    }
    return true;
  }

  void dfs(std::size_t depth, std::vector<Expr>& current) {
    const std::size_t mark = current.size();
    if (!evaluate_ready(depth, current)) {
      current.resize(mark);
      return;
    }
    if (depth == vars_.size()) {
      terms_.push_back(Expr::product(current));
    } else {
      for (int v = 1; v <= dim_; ++v) {
        values_[vars_[depth]] = v;
        dfs(depth + 1, current);
      }
      values_.erase(vars_[depth]);
    }
    current.resize(mark);
  }

  int dim_;
  std::map<char, int> values_;
  std::vector<Parsed> factors_;
  std::vector<char> vars_;
  std::vector<std::vector<std::size_t>> ready_;
  std::vector<Expr> terms_;
};

}  // namespace

Expr contract(Session& s, const std::vector<Factor>& factors, const std::map<char, int>& fixed) {
  std::lock_guard lock(s.mutex());
  for (const auto& [c, v] : fixed) {
    if (v < 1 || v > s.dim()) throw IndexError(std::string("fixed value of '") + c + "' out of range");
  }
  Contraction c(s, factors, fixed);
  return c.run(s);
}

}  // namespace grg
