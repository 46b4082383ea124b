#include "cnotread/qutrit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cnotread {

namespace {

int modes_for_dim(Eigen::Index dim) {
  if (dim == kModeDim) return 1;
  if (dim == kPairDim) return 2;
  throw std::invalid_argument("density matrix must be 3x3 or 9x9, got dimension " +
                              std::to_string(dim));
}

void require_mode_index(int mode) {
  if (mode != 1 && mode != 2) {
    throw std::invalid_argument("mode index must be 1 or 2, got " + std::to_string(mode));
  }
}

}  // namespace

DensityMatrix::DensityMatrix() : entries_(Eigen::MatrixXcd::Zero(kModeDim, kModeDim)), mode_count_(1) {
  entries_(2, 2) = 1.0;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  mode_count_ = modes_for_dim(entries_.rows());
}

DensityMatrix DensityMatrix::pure(const Vec3& v) { return from_mode(v * v.adjoint()); }

DensityMatrix DensityMatrix::basis(Level level) { return from_mode(level_projector(level)); }

Mat3 DensityMatrix::as_mode() const {
  if (mode_count_ != 1) throw std::invalid_argument("expected a single-mode state");
  return entries_;
}

Mat9 DensityMatrix::as_pair() const {
  if (mode_count_ != 2) throw std::invalid_argument("expected a two-mode state");
  return entries_;
}

double DensityMatrix::hermiticity_error() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const Eigen::MatrixXcd herm = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

std::array<double, 3> DensityMatrix::populations(int mode) const {
  Mat3 reduced;
  if (mode_count_ == 1) {
    reduced = entries_;
  } else {
    reduced = partial_trace(Mat9(entries_), mode);
  }
  return {reduced(0, 0).real(), reduced(1, 1).real(), reduced(2, 2).real()};
}

void DensityMatrix::check_valid() const {
  if (hermiticity_error() > kAlgebraTol) {
    throw std::logic_error("density matrix is not Hermitian");
  }
  if (std::abs(trace() - 1.0) > kTraceTol) {
    throw std::logic_error("density matrix trace is " + std::to_string(trace()));
  }
  if (min_eigenvalue() < -kTraceTol) {
    throw std::logic_error("density matrix has a negative eigenvalue");
  }
}

Mat2 pauli_matrix(Pauli p) {
  const Complex i{0.0, 1.0};
  Mat2 m;
  switch (p) {
    case Pauli::kI:
      m << 1, 0, 0, 1;
      break;
    case Pauli::kX:
      m << 0, 1, 1, 0;
      break;
    case Pauli::kY:
      m << 0, -i, i, 0;
      break;
    case Pauli::kZ:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

std::string to_string(Pauli p) {
  switch (p) {
    case Pauli::kI:
      return "I";
    case Pauli::kX:
      return "X";
    case Pauli::kY:
      return "Y";
    case Pauli::kZ:
      return "Z";
  }
  return "?";
}

Mat3 embed_qubit_op(const Mat2& op) {
  Mat3 m = Mat3::Zero();
  m.topLeftCorner<2, 2>() = op;
  m(2, 2) = 1.0;
  return m;
}

Mat9 cnot_unitary() {
  Mat9 c = Mat9::Identity();
  // |1>|0> <-> |1>|1>; rows 3 and 4 hold |0>|0>, |0>|1>.
  const int one_zero = 3 * 1 + 0;
  const int one_one = 3 * 1 + 1;
  c(one_zero, one_zero) = 0.0;
  c(one_one, one_one) = 0.0;
  c(one_zero, one_one) = 1.0;
  c(one_one, one_zero) = 1.0;
  return c;
}

Mat3 level_projector(Level level) {
  Mat3 p = Mat3::Zero();
  p(index_of(level), index_of(level)) = 1.0;
  return p;
}

Mat9 kron(const Mat3& a, const Mat3& b) {
  Mat9 out;
  for (int i = 0; i < kModeDim; ++i) {
    for (int j = 0; j < kModeDim; ++j) {
      out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.mode_count() != 1 || b.mode_count() != 1) {
    throw std::invalid_argument("kron expects two single-mode operands");
  }
  return DensityMatrix::from_pair(kron(a.as_mode(), b.as_mode()));
}

ModeOperator kron(const ModeOperator& a, const ModeOperator& b) {
  if (a.dim() != kModeDim || b.dim() != kModeDim) {
    throw std::invalid_argument("kron expects two single-mode operators");
  }
  return ModeOperator{Eigen::MatrixXcd(kron(Mat3(a.entries), Mat3(b.entries))),
                      a.label + "(x)" + b.label};
}

Mat9 lift(const Mat3& op, int mode) {
  require_mode_index(mode);
  return mode == 1 ? kron(op, Mat3::Identity()) : kron(Mat3::Identity(), op);
}

Mat3 partial_trace(const Mat9& rho, int keep) {
  require_mode_index(keep);
  Mat3 out = Mat3::Zero();
  if (keep == 1) {
    for (int a = 0; a < kModeDim; ++a) {
      for (int b = 0; b < kModeDim; ++b) {
        out(a, b) = rho.block<3, 3>(3 * a, 3 * b).trace();
      }
    }
  } else {
    for (int a = 0; a < kModeDim; ++a) {
      out += rho.block<3, 3>(3 * a, 3 * a);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int keep) {
  if (rho.mode_count() != 2) {
    throw std::invalid_argument("partial trace needs a two-mode state");
  }
  return DensityMatrix::from_mode(partial_trace(rho.as_pair(), keep));
}

Projection project(const DensityMatrix& rho, const ModeOperator& proj, int mode) {
  Eigen::MatrixXcd p = proj.entries;
  if ((p * p - p).cwiseAbs().maxCoeff() > kAlgebraTol) {
    throw std::invalid_argument("operator '" + proj.label + "' is not a projector");
  }
  if (rho.mode_count() == 2 && p.rows() == kModeDim) {
    p = lift(Mat3(p), mode);
  }
  if (p.rows() != rho.dim()) {
    throw std::invalid_argument("projector dimension does not match the state");
  }
  const Eigen::MatrixXcd post = p * rho.entries() * p;
  const double prob = std::clamp(post.trace().real(), 0.0, 1.0);
  Projection out;
  out.probability = prob;
  if (prob > kImpossibleBranch) {
    out.state = DensityMatrix(post / prob);
  } else {
    out.probability = 0.0;
  }
  return out;
}

double classical_fidelity(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("fidelity needs distributions of equal length");
  }
  double overlap = 0.0;
  double sum_p = 0.0;
  double sum_q = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum_p += p[i];
    sum_q += q[i];
    if (p[i] < -kAlgebraTol || q[i] < -kAlgebraTol) {
      throw std::invalid_argument("fidelity needs nonnegative probabilities");
    }
    overlap += std::sqrt(std::max(p[i], 0.0) * std::max(q[i], 0.0));
  }
  if (std::abs(sum_p - 1.0) > 1e-9 || std::abs(sum_q - 1.0) > 1e-9) {
    throw std::invalid_argument("fidelity needs normalized distributions");
  }
  return std::clamp(overlap * overlap, 0.0, 1.0);
}

}  // namespace cnotread
