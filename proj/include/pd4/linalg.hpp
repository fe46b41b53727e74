#pragma once

#include <utility>
#include <vector>

#include "pd4/rational.hpp"

namespace pd4::alg {

using SparseRow = std::vector<std::pair<int, Rat>>;

// Exact affine linear solver over Q. Maintains the current solution set of
// all constraints seen so far as particular + span(kernel), shrinking the
// kernel one basis vector per independent row. Cheap when rows vastly
// outnumber the final kernel dimension.
class AffineSolver {
 public:
  explicit AffineSolver(int n);

  // Imposes row . x = rhs.
  void add_row(const SparseRow& row, const Rat& rhs);

  bool consistent() const { return consistent_; }
  int dimension() const { return static_cast<int>(kernel_.size()); }
  const std::vector<Rat>& particular() const { return x0_; }
  const std::vector<std::vector<Rat>>& kernel() const { return kernel_; }

  // Membership of v in the affine solution set.
  bool contains(const std::vector<Rat>& v) const;

 private:
  bool consistent_ = true;
  std::vector<Rat> x0_;
  std::vector<std::vector<Rat>> kernel_;
};

}  // namespace pd4::alg
