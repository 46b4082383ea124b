#include "cnotread/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cnotread {

namespace {

void require_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                std::to_string(value));
  }
}

constexpr std::array<Pauli, 4> kPaulis = {Pauli::kI, Pauli::kX, Pauli::kY, Pauli::kZ};

Mat3 embedded(Pauli p) { return embed_qubit_op(pauli_matrix(p)); }

// C (sigma_n (x) sigma_m) for every pair, identity pair first.
const std::array<Mat9, 16>& cnot_pauli_products() {
  static const std::array<Mat9, 16> products = [] {
    std::array<Mat9, 16> out;
    const Mat9 c = cnot_unitary();
    int k = 0;
    for (Pauli n : kPaulis) {
      for (Pauli m : kPaulis) {
        out[k++] = c * kron(embedded(n), embedded(m));
      }
    }
    return out;
  }();
  return products;
}

// |L><j| for j in {0, 1, L}.
std::array<Mat3, 3> to_loss_ops() {
  std::array<Mat3, 3> ops;
  for (int j = 0; j < kModeDim; ++j) {
    ops[j] = Mat3::Zero();
    ops[j](index_of(Level::kLoss), j) = 1.0;
  }
  return ops;
}

Mat9 lose_mode(const Mat9& rho, int mode) {
  const Mat3 lost = level_projector(Level::kLoss);
  if (mode == 1) return kron(lost, partial_trace(rho, 2));
  return kron(partial_trace(rho, 1), lost);
}

}  // namespace

void ErrorParams::validate() const {
  require_probability(k1, "k1");
  require_probability(k2, "k2");
  require_probability(p0, "p0");
  require_probability(p_x, "p_x");
  require_probability(p_c, "p_c");
  require_probability(p_xloss, "p_xloss");
  require_probability(p_closs, "p_closs");
  require_probability(p_dloss, "p_dloss");
  require_probability(p_dflip, "p_dflip");
  require_probability(closs_dist.control, "closs_dist");
  require_probability(closs_dist.target, "closs_dist");
  require_probability(closs_dist.both, "closs_dist");
  if (std::abs(closs_dist.control + closs_dist.target + closs_dist.both - 1.0) > 1e-12) {
    throw std::invalid_argument("closs_dist must sum to 1");
  }
  const double norm = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw std::invalid_argument("alpha/beta must satisfy |alpha|^2 + |beta|^2 = 1, got " +
                                std::to_string(norm));
  }
}

Mat3 input_qubit_state(const ErrorParams& params) {
  Vec3 psi(params.alpha, params.beta, 0.0);
  return params.k1 * (psi * psi.adjoint()) + (1.0 - params.k1) * level_projector(Level::kLoss);
}

DensityMatrix prepare_ancilla(const ErrorParams& params) {
  Mat3 m = Mat3::Zero();
  m(0, 0) = params.k2 * params.p0;
  m(1, 1) = params.k2 * (1.0 - params.p0);
  m(2, 2) = 1.0 - params.k2;
  return DensityMatrix::from_mode(m);
}

DensityMatrix prepare_input(const ErrorParams& params) {
  return DensityMatrix::from_pair(kron(input_qubit_state(params), prepare_ancilla(params).as_mode()));
}

std::vector<Mat3> x_gate_kraus(double p_x) {
  require_probability(p_x, "p_x");
  const Mat3 x = embedded(Pauli::kX);
  std::vector<Mat3> ops;
  ops.reserve(4);
  ops.push_back(std::sqrt(1.0 - p_x) * x);
  for (Pauli n : {Pauli::kX, Pauli::kY, Pauli::kZ}) {
    ops.push_back(std::sqrt(p_x / 3.0) * x * embedded(n));
  }
  return ops;
}

std::vector<Mat9> cnot_kraus(double p_c) {
  require_probability(p_c, "p_c");
  const auto& products = cnot_pauli_products();
  std::vector<Mat9> ops;
  ops.reserve(products.size());
  ops.push_back(std::sqrt(1.0 - p_c) * products[0]);
  for (std::size_t k = 1; k < products.size(); ++k) {
    ops.push_back(std::sqrt(p_c / 15.0) * products[k]);
  }
  return ops;
}

std::vector<Mat3> mode_loss_kraus(double p_loss) {
  require_probability(p_loss, "p_loss");
  std::vector<Mat3> ops;
  ops.push_back(std::sqrt(1.0 - p_loss) * Mat3::Identity());
  for (const Mat3& op : to_loss_ops()) ops.push_back(std::sqrt(p_loss) * op);
  return ops;
}

std::vector<Mat9> cnot_loss_kraus(double p_loss, const CnotLossDistribution& dist) {
  require_probability(p_loss, "p_closs");
  const auto lose = to_loss_ops();
  const Mat3 id = Mat3::Identity();
  std::vector<Mat9> ops;
  ops.push_back(std::sqrt(1.0 - p_loss) * Mat9::Identity());
  for (const Mat3& op : lose) ops.push_back(std::sqrt(p_loss * dist.control) * kron(op, id));
  for (const Mat3& op : lose) ops.push_back(std::sqrt(p_loss * dist.target) * kron(id, op));
  for (const Mat3& a : lose) {
    for (const Mat3& b : lose) ops.push_back(std::sqrt(p_loss * dist.both) * kron(a, b));
  }
  return ops;
}

Mat3 apply_kraus(const Mat3& rho, const std::vector<Mat3>& ops) {
  Mat3 out = Mat3::Zero();
  for (const Mat3& k : ops) out.noalias() += k * rho * k.adjoint();
  return out;
}

Mat9 apply_kraus(const Mat9& rho, const std::vector<Mat9>& ops) {
  Mat9 out = Mat9::Zero();
  for (const Mat9& k : ops) out.noalias() += k * rho * k.adjoint();
  return out;
}

Mat3 x_gate_channel(const Mat3& rho, double p_x, double p_xloss) {
  require_probability(p_xloss, "p_xloss");
  Mat3 out = apply_kraus(rho, x_gate_kraus(p_x));
  if (p_xloss > 0.0) {
    out = (1.0 - p_xloss) * out + p_xloss * out.trace() * level_projector(Level::kLoss);
  }
  return out;
}

DensityMatrix x_gate_channel(const DensityMatrix& rho, double p_x, double p_xloss, int mode) {
  if (rho.mode_count() == 1) {
    return DensityMatrix::from_mode(x_gate_channel(rho.as_mode(), p_x, p_xloss));
  }
  require_probability(p_xloss, "p_xloss");
  std::vector<Mat9> ops;
  for (const Mat3& k : x_gate_kraus(p_x)) ops.push_back(lift(k, mode));
  Mat9 out = apply_kraus(rho.as_pair(), ops);
  if (p_xloss > 0.0) out = (1.0 - p_xloss) * out + p_xloss * lose_mode(out, mode);
  return DensityMatrix::from_pair(out);
}

Mat9 cnot_channel(const Mat9& rho, double p_c, double p_closs, const CnotLossDistribution& dist) {
  require_probability(p_c, "p_c");
  require_probability(p_closs, "p_closs");
  const auto& products = cnot_pauli_products();
  Mat9 errors = Mat9::Zero();
  if (p_c > 0.0) {
    for (std::size_t k = 1; k < products.size(); ++k) {
      errors.noalias() += products[k] * rho * products[k].adjoint();
    }
  }
  Mat9 out = (1.0 - p_c) * (products[0] * rho * products[0].adjoint()) + (p_c / 15.0) * errors;
  if (p_closs > 0.0) {
    Mat9 lost = Mat9::Zero();
    if (dist.control > 0.0) lost += dist.control * lose_mode(out, 1);
    if (dist.target > 0.0) lost += dist.target * lose_mode(out, 2);
    if (dist.both > 0.0) {
      const Mat3 l = level_projector(Level::kLoss);
      lost += dist.both * out.trace() * kron(l, l);
    }
    out = (1.0 - p_closs) * out + p_closs * lost;
  }
  return out;
}

DensityMatrix cnot_channel(const DensityMatrix& rho, double p_c, double p_closs,
                           const CnotLossDistribution& dist) {
  return DensityMatrix::from_pair(cnot_channel(rho.as_pair(), p_c, p_closs, dist));
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kZero:
      return "Zero";
    case Outcome::kOne:
      return "One";
    case Outcome::kNoClick:
      return "NoClick";
  }
  return "?";
}

std::vector<DetectorBranch> detector_measure(const DensityMatrix& rho, int mode, double p_dloss,
                                             double p_dflip) {
  require_probability(p_dloss, "p_dloss");
  require_probability(p_dflip, "p_dflip");
  std::array<Eigen::MatrixXcd, 3> projected;
  std::array<double, 3> q{};
  for (int j = 0; j < kModeDim; ++j) {
    Eigen::MatrixXcd p = level_projector(static_cast<Level>(j));
    if (rho.mode_count() == 2) p = lift(Mat3(p), mode);
    projected[j] = p * rho.entries() * p;
    q[j] = projected[j].trace().real();
  }
  const double keep = 1.0 - p_dloss;
  const std::array<std::pair<Outcome, Eigen::MatrixXcd>, 3> weighted = {{
      {Outcome::kZero, keep * ((1.0 - p_dflip) * projected[0] + p_dflip * projected[1])},
      {Outcome::kOne, keep * ((1.0 - p_dflip) * projected[1] + p_dflip * projected[0])},
      {Outcome::kNoClick, projected[2] + p_dloss * (projected[0] + projected[1])},
  }};
  std::vector<DetectorBranch> branches;
  for (const auto& [outcome, unnormalized] : weighted) {
    const double prob = unnormalized.trace().real();
    if (prob > kImpossibleBranch) {
      branches.push_back({outcome, prob, DensityMatrix(unnormalized / prob)});
    }
  }
  return branches;
}

std::array<Mat3, 3> measure_ancilla_and_discard(const Mat9& rho, double p_dloss, double p_dflip) {
  // Mode-1 block conditioned on the ancilla sitting in level j.
  std::array<Mat3, 3> given;
  for (int j = 0; j < kModeDim; ++j) {
    for (int a = 0; a < kModeDim; ++a) {
      for (int b = 0; b < kModeDim; ++b) {
        given[j](a, b) = rho(3 * a + j, 3 * b + j);
      }
    }
  }
  const double keep = 1.0 - p_dloss;
  std::array<Mat3, 3> out;
  out[static_cast<int>(Outcome::kZero)] = keep * ((1.0 - p_dflip) * given[0] + p_dflip * given[1]);
  out[static_cast<int>(Outcome::kOne)] = keep * ((1.0 - p_dflip) * given[1] + p_dflip * given[0]);
  out[static_cast<int>(Outcome::kNoClick)] = given[2] + p_dloss * (given[0] + given[1]);
  return out;
}

}  // namespace cnotread
