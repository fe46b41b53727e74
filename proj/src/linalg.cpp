#include "pd4/linalg.hpp"

namespace pd4::alg {

namespace {

Rat dot(const SparseRow& row, const std::vector<Rat>& v) {
  Rat s(0);
  for (const auto& [c, cv] : row) {
    if (v[c] != 0) s += cv * v[c];
  }
  return s;
}

}  // namespace

AffineSolver::AffineSolver(int n) : x0_(n, Rat(0)) {
  kernel_.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> e(n, Rat(0));
    e[i] = 1;
    kernel_.push_back(std::move(e));
  }
}

void AffineSolver::add_row(const SparseRow& row, const Rat& rhs) {
  if (!consistent_) return;
  Rat r = dot(row, x0_) - rhs;
  int pivot = -1;
  Rat pd;
  std::vector<Rat> dots(kernel_.size());
  for (size_t i = 0; i < kernel_.size(); ++i) {
    dots[i] = dot(row, kernel_[i]);
    if (pivot < 0 && dots[i] != 0) {
      pivot = static_cast<int>(i);
      pd = dots[i];
    }
  }
  if (pivot < 0) {
    if (r != 0) consistent_ = false;
    return;
  }
  const size_t n = x0_.size();
  std::vector<Rat> pv = std::move(kernel_[pivot]);
  if (r != 0) {
    Rat lam = r / pd;
    for (size_t j = 0; j < n; ++j)
      if (pv[j] != 0) x0_[j] -= lam * pv[j];
  }
  std::vector<std::vector<Rat>> next;
  next.reserve(kernel_.size() - 1);
  for (size_t i = 0; i < kernel_.size(); ++i) {
    if (static_cast<int>(i) == pivot) continue;
    if (dots[i] != 0) {
      Rat lam = dots[i] / pd;
      for (size_t j = 0; j < n; ++j)
        if (pv[j] != 0) kernel_[i][j] -= lam * pv[j];
    }
    next.push_back(std::move(kernel_[i]));
  }
  kernel_ = std::move(next);
}

bool AffineSolver::contains(const std::vector<Rat>& v) const {
  if (!consistent_) return false;
  const size_t n = x0_.size();
  std::vector<Rat> r(n);
  for (size_t j = 0; j < n; ++j) r[j] = v[j] - x0_[j];
  // eliminate against a working echelon copy of the kernel
  std::vector<std::vector<Rat>> work = kernel_;
  for (auto& k : work) {
    size_t piv = n;
    for (size_t j = 0; j < n; ++j)
      if (k[j] != 0) {
        piv = j;
        break;
      }
    if (piv == n) continue;
    if (r[piv] != 0) {
      Rat lam = r[piv] / k[piv];
      for (size_t j = piv; j < n; ++j)
        if (k[j] != 0) r[j] -= lam * k[j];
    }
    // clear this pivot from the remaining kernel vectors so later pivots
    // are genuinely new columns
    for (auto& other : work) {
      if (&other == &k || other[piv] == 0) continue;
      Rat lam = other[piv] / k[piv];
      for (size_t j = 0; j < n; ++j)
        if (k[j] != 0) other[j] -= lam * k[j];
    }
  }
  for (size_t j = 0; j < n; ++j)
    if (r[j] != 0) return false;
  return true;
}

}  // namespace pd4::alg
