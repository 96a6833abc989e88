#include "kiselman/morphisms.hpp"

#include <string>

#include "kiselman/errors.hpp"

namespace kiselman {

namespace {

void check_cell(unsigned size, unsigned row, unsigned col) {
  if (row < 1 || row > size || col < 1 || col > size) {
    throw MalformedInput("matrix index (" + std::to_string(row) + ", " +
                         std::to_string(col) + ") out of range");
  }
}

}  // namespace

BoolMatrix::BoolMatrix(unsigned size) : size_(size) {
  check_rank(size);
  entries_.assign(std::size_t{size} * size, 0);
}

BoolMatrix BoolMatrix::identity(unsigned size) {
  BoolMatrix m(size);
  for (unsigned i = 1; i <= size; ++i) m.set(i, i, true);
  return m;
}

BoolMatrix BoolMatrix::ones(unsigned size) {
  BoolMatrix m(size);
  m.entries_.assign(m.entries_.size(), 1);
  return m;
}

BoolMatrix BoolMatrix::diagonal(const IndexSet& X) {
  BoolMatrix m(X.rank());
  for (unsigned i : X.members()) m.set(i, i, true);
  return m;
}

BoolMatrix BoolMatrix::parse(std::string_view text) {
  std::vector<std::string> rows;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t j = text.find('\n', i);
    if (j == std::string_view::npos) j = text.size();
    std::string row;
    for (char c : text.substr(i, j - i)) {
      if (c == '0' || c == '1') {
        row += c;
      } else if (c != ' ' && c != '\t' && c != '\r') {
        throw MalformedInput(std::string("matrix entry must be 0 or 1, got '") +
                             c + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
    i = j + 1;
  }
  if (rows.empty()) throw MalformedInput("empty matrix");
  const auto n = static_cast<unsigned>(rows.size());
  BoolMatrix m(n);
  for (unsigned r = 0; r < n; ++r) {
    if (rows[r].size() != n) {
      throw MalformedInput("matrix is not square: row " +
                           std::to_string(r + 1) + " has " +
                           std::to_string(rows[r].size()) + " entries");
    }
    for (unsigned c = 0; c < n; ++c) m.set(r + 1, c + 1, rows[r][c] == '1');
  }
  return m;
}

bool BoolMatrix::at(unsigned row, unsigned col) const {
  check_cell(size_, row, col);
  return entries_[(row - 1) * size_ + (col - 1)] != 0;
}

void BoolMatrix::set(unsigned row, unsigned col, bool value) {
  check_cell(size_, row, col);
  entries_[(row - 1) * size_ + (col - 1)] = value ? 1 : 0;
}

IndexSet BoolMatrix::column_set(unsigned col) const {
  IndexSet out(size_);
  for (unsigned r = 1; r <= size_; ++r) {
    if (at(r, col)) out.insert(r);
  }
  return out;
}

std::string BoolMatrix::to_string() const {
  std::string s;
  for (unsigned r = 1; r <= size_; ++r) {
    for (unsigned c = 1; c <= size_; ++c) s += at(r, c) ? '1' : '0';
    s += '\n';
  }
  return s;
}

bool dn_member(const BoolMatrix& M) {
  const unsigned n = M.size();
  for (unsigned x = 1; x <= n; ++x) {
    for (unsigned y = x + 1; y <= n; ++y) {
      for (unsigned i = 1; i <= n; ++i) {
        // Looking for M[x][i] = 0, M[y][i] = 1, M[x][j] = 1, M[y][j] = 0.
        if (M.at(x, i) || !M.at(y, i)) continue;
        for (unsigned j = i + 1; j <= n; ++j) {
          if (M.at(x, j) && !M.at(y, j)) return false;
        }
      }
    }
  }
  return true;
}

BoolMatrix dn_product(const BoolMatrix& A, const BoolMatrix& B) {
  if (A.size() != B.size()) throw RankMismatch(A.size(), B.size());
  const unsigned n = A.size();
  BoolMatrix C(n);
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = 1; j <= n; ++j) {
      bool v = false;
      for (unsigned k = 1; k <= n && !v; ++k) v = A.at(i, k) && B.at(k, j);
      C.set(i, j, v);
    }
  }
  return C;
}

EndomorphismSpec::EndomorphismSpec(BoolMatrix matrix)
    : matrix_(std::move(matrix)) {
  if (!dn_member(matrix_)) {
    throw InvalidEndomorphism(
        "matrix contains the forbidden 2x2 pattern [[0,1],[1,0]]");
  }
  images_.reserve(matrix_.size());
  for (unsigned i = 1; i <= matrix_.size(); ++i) {
    images_.push_back(idempotent(matrix_.column_set(i)));
  }
}

EndomorphismSpec deletion_matrix(const IndexSet& X) {
  return EndomorphismSpec(BoolMatrix::diagonal(X.complement()));
}

Element apply_endomorphism(const EndomorphismSpec& psi, const Element& x) {
  if (psi.rank() != x.rank()) throw RankMismatch(psi.rank(), x.rank());
  Word image(x.rank());
  for (Letter l : x.canonical().letters()) {
    image = image + psi.image(l).canonical();
  }
  return reduce(image);
}

Word word_delete(const IndexSet& X, const Word& w) {
  if (X.rank() != w.rank()) throw RankMismatch(X.rank(), w.rank());
  std::vector<Letter> kept;
  kept.reserve(w.size());
  for (Letter l : w.letters()) {
    if (!X.contains(l)) kept.push_back(l);
  }
  return Word(w.rank(), std::move(kept));
}

Element delete_indices(const IndexSet& X, const Element& x) {
  return reduce(word_delete(X, x.canonical()));
}

}  // namespace kiselman
