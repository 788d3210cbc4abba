// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef EBBR_TYPES_HPP
#define EBBR_TYPES_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ebbr {

enum class ErrorCode {
  kInvalidArgument = 1,
  kDimensionMismatch = 2,
  kHorizonExceeded = 3,
  kCompositionOverflow = 4,
  kImpossibleObservation = 5,
  kEmptySupport = 6,
  kDomainLimit = 7,
  kParse = 8,
  kIo = 9,
};

/// Library error carrying a stable code so the C API can map it 1:1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Dense row-major matrix of doubles. Value semantics throughout.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw Error(ErrorCode::kInvalidArgument, "negative matrix shape");
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(static_cast<int>(rows.size()),
             rows.size() ? static_cast<int>(rows.begin()->size()) : 0);
    int i = 0;
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != m.cols_)
        throw Error(ErrorCode::kDimensionMismatch, "ragged initializer");
      int j = 0;
      for (double v : r) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  std::span<double> row(int r) { return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }
  std::span<const double> row(int r) const { return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Opponent conditionals: q(i, j) = P(action j | private state i). Rows are
/// distributions over actions.
struct OpponentStrategy {
  Matrix q;
};

/// Our contingent plan: r(j, k) = P(our action k | observed opponent action j).
struct OurStrategy {
  Matrix r;
};

bool is_finite(const Matrix& m);
bool is_row_stochastic(const Matrix& m, double tol = 1e-12);

}  // namespace ebbr

#endif  // EBBR_TYPES_HPP
