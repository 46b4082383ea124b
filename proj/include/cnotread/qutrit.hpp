#pragma once

// Dense linear algebra over one or two three-level modes {|0>, |1>, |L>}.
//
// A mode is a polarization qubit extended by a third level |L> that marks an
// absent photon. The simulator never holds more than two modes at once, so all
// matrices are either 3x3 or 9x9. Two-mode index convention: mode 1 is the
// slow index, i.e. basis state |a>|b> sits at row 3*a + b.

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Dense>

namespace cnotread {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3cd;
using Mat9 = Eigen::Matrix<Complex, 9, 9>;
using Vec3 = Eigen::Vector3cd;
using Vec9 = Eigen::Matrix<Complex, 9, 1>;

inline constexpr int kModeDim = 3;
inline constexpr int kPairDim = kModeDim * kModeDim;

/// Basis levels of a single mode.
enum class Level : int { kZero = 0, kOne = 1, kLoss = 2 };

inline constexpr int index_of(Level level) { return static_cast<int>(level); }

/// Single-qubit Pauli labels.
enum class Pauli { kI, kX, kY, kZ };

/// Tolerances shared by the algebra layer and its callers.
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kImpossibleBranch = 1e-15;

/// A state on one mode (3x3) or two modes (9x9).
class DensityMatrix {
 public:
  DensityMatrix();
  /// Throws std::invalid_argument unless `entries` is square of size 3 or 9.
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  static DensityMatrix from_mode(const Mat3& m) { return DensityMatrix(Eigen::MatrixXcd(m)); }
  static DensityMatrix from_pair(const Mat9& m) { return DensityMatrix(Eigen::MatrixXcd(m)); }
  /// Pure single-mode state |v><v|.
  static DensityMatrix pure(const Vec3& v);
  static DensityMatrix basis(Level level);

  int dim() const { return static_cast<int>(entries_.rows()); }
  int mode_count() const { return mode_count_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  Mat3 as_mode() const;
  Mat9 as_pair() const;

  double trace() const { return entries_.trace().real(); }
  /// max |rho_ij - conj(rho_ji)|
  double hermiticity_error() const;
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;
  /// Diagonal of the single-mode reduced state, in level order (0, 1, L).
  std::array<double, 3> populations(int mode = 1) const;

  /// Throws std::logic_error when the state is not Hermitian, trace-one and PSD
  /// within the shared tolerances.
  void check_valid() const;

 private:
  Eigen::MatrixXcd entries_;
  int mode_count_;
};

/// An operator on one or two modes with a descriptive tag.
struct ModeOperator {
  Eigen::MatrixXcd entries;
  std::string label;

  int dim() const { return static_cast<int>(entries.rows()); }
};

Mat2 pauli_matrix(Pauli p);
std::string to_string(Pauli p);

/// 3x3 operator equal to `op` on span{|0>,|1>} and to 1 on |L>.
Mat3 embed_qubit_op(const Mat2& op);

/// CNOT with mode 1 as control: acts on the qubit-qubit block and as the
/// identity whenever either mode is |L>.
Mat9 cnot_unitary();

/// Projector onto a single level of one mode.
Mat3 level_projector(Level level);

/// Tensor product (mode 1 (x) mode 2). Both operands must be single-mode.
Mat9 kron(const Mat3& a, const Mat3& b);
DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);
ModeOperator kron(const ModeOperator& a, const ModeOperator& b);

/// Lifts a single-mode operator onto `mode` (1 or 2) of a two-mode system.
Mat9 lift(const Mat3& op, int mode);

/// Reduced state of `keep` (1 or 2). Works on unnormalized matrices too.
Mat3 partial_trace(const Mat9& rho, int keep);
DensityMatrix partial_trace(const DensityMatrix& rho, int keep);

struct Projection {
  double probability = 0.0;
  /// Empty when the branch is impossible (probability <= 1e-15).
  std::optional<DensityMatrix> state;
};

/// Projective measurement branch with a one-mode projector applied on `mode`
/// (ignored for single-mode states). The post-state is renormalized.
Projection project(const DensityMatrix& rho, const ModeOperator& proj, int mode = 1);

/// (sum_i sqrt(p_i q_i))^2 for two discrete distributions of equal length.
double classical_fidelity(std::span<const double> p, std::span<const double> q);

}  // namespace cnotread
