#include "toric_af/hnf.hpp"

#include <utility>

#include "toric_af/error.hpp"

namespace toric_af {

namespace {

void swap_rows(std::vector<std::vector<Integer>>& rows, std::size_t a, std::size_t b) {
  if (a != b) std::swap(rows[a], rows[b]);
}

// rows[target] -= q * rows[source]
void subtract_multiple(std::vector<std::vector<Integer>>& rows, std::size_t target, std::size_t source,
                       const Integer& q) {
  if (q == 0) return;
  for (std::size_t c = 0; c < rows[target].size(); ++c) rows[target][c] -= q * rows[source][c];
}

}  // namespace

IntMatrix hermite_normal_form(const IntMatrix& m) {
  auto rows = m.to_rows();
  const std::size_t nrows = m.rows();
  const std::size_t ncols = m.cols();
  std::size_t pivot_row = 0;

  for (std::size_t col = 0; col < ncols && pivot_row < nrows; ++col) {
    // Euclid on the column below pivot_row until a single nonzero entry remains.
    while (true) {
      std::size_t best = nrows;
      for (std::size_t r = pivot_row; r < nrows; ++r) {
        if (rows[r][col] == 0) continue;
        if (best == nrows || abs(rows[r][col]) < abs(rows[best][col])) best = r;
      }
      if (best == nrows) break;
      swap_rows(rows, pivot_row, best);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < nrows; ++r) {
        if (rows[r][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[pivot_row][col].get_mpz_t());
        subtract_multiple(rows, r, pivot_row, q);
        if (rows[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[pivot_row][col] == 0) continue;
    if (rows[pivot_row][col] < 0) {
      for (auto& v : rows[pivot_row]) v = -v;
    }
    for (std::size_t r = 0; r < pivot_row; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[pivot_row][col].get_mpz_t());
      subtract_multiple(rows, r, pivot_row, q);
    }
    ++pivot_row;
  }

  rows.resize(pivot_row);
  if (rows.empty()) return IntMatrix(0, ncols);
  return IntMatrix::from_rows(rows);
}

std::size_t lattice_rank(const IntMatrix& m) { return hermite_normal_form(m).rows(); }

bool same_row_lattice(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::RankMismatch, "lattices live in different ambient dimensions");
  return hermite_normal_form(a) == hermite_normal_form(b);
}

}  // namespace toric_af
