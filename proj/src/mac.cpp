#include "diamond/mac.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace diamond {

namespace {

void check_rows(const std::vector<double>& p, std::size_t nrows,
                std::size_t ncols, double tol, const char* what) {
  for (std::size_t r = 0; r < nrows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < ncols; ++c) {
      double v = p[r * ncols + c];
      if (v < -1e-15) throw std::invalid_argument(std::string(what) + ": negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol)
      throw std::invalid_argument(std::string(what) + ": row does not sum to 1");
  }
}

}  // namespace

MacChannel::MacChannel(std::size_t nx1, std::size_t nx2, std::size_t ny,
                       std::vector<double> transition)
    : nx1_(nx1), nx2_(nx2), ny_(ny), p_(std::move(transition)) {
  if (nx1_ == 0 || nx2_ == 0 || ny_ == 0 || p_.size() != nx1_ * nx2_ * ny_)
    throw std::invalid_argument("MacChannel: shape mismatch");
  check_rows(p_, nx1_ * nx2_, ny_, 1e-12, "MacChannel");
}

MacChannel MacChannel::binary_adder() {
  std::vector<double> p(2 * 2 * 3, 0.0);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) p[(a * 2 + b) * 3 + (a + b)] = 1.0;
  return MacChannel(2, 2, 3, std::move(p));
}

MacChannel MacChannel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::size_t nx1 = j.at("x1_size").get<std::size_t>();
  std::size_t nx2 = j.at("x2_size").get<std::size_t>();
  std::size_t ny = j.at("y_size").get<std::size_t>();
  const auto& t = j.at("p_y_given_x1x2");
  if (t.size() != nx1) throw std::invalid_argument("channel json: x1 dim");
  std::vector<double> p;
  p.reserve(nx1 * nx2 * ny);
  for (std::size_t a = 0; a < nx1; ++a) {
    if (t[a].size() != nx2) throw std::invalid_argument("channel json: x2 dim");
    for (std::size_t b = 0; b < nx2; ++b) {
      if (t[a][b].size() != ny) throw std::invalid_argument("channel json: y dim");
      double sum = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        double v = t[a][b][y].get<double>();
        p.push_back(v);
        sum += v;
      }
      if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("channel json: row does not sum to 1");
    }
  }
  // Renormalize exactly so downstream validation at 1e-12 passes.
  for (std::size_t r = 0; r < nx1 * nx2; ++r) {
    double sum = 0.0;
    for (std::size_t y = 0; y < ny; ++y) sum += p[r * ny + y];
    for (std::size_t y = 0; y < ny; ++y) p[r * ny + y] /= sum;
  }
  return MacChannel(nx1, nx2, ny, std::move(p));
}

std::string MacChannel::to_json() const {
  nlohmann::json t = nlohmann::json::array();
  for (std::size_t a = 0; a < nx1_; ++a) {
    nlohmann::json row1 = nlohmann::json::array();
    for (std::size_t b = 0; b < nx2_; ++b) {
      nlohmann::json row2 = nlohmann::json::array();
      for (std::size_t y = 0; y < ny_; ++y) row2.push_back(at(a, b, y));
      row1.push_back(row2);
    }
    t.push_back(row1);
  }
  nlohmann::json j{{"x1_size", nx1_},
                   {"x2_size", nx2_},
                   {"y_size", ny_},
                   {"p_y_given_x1x2", t}};
  return j.dump(2);
}

std::vector<double> MacChannel::joint_with_inputs(
    const std::vector<double>& p_x1x2) const {
  if (p_x1x2.size() != nx1_ * nx2_)
    throw std::invalid_argument("joint_with_inputs: input shape");
  std::vector<double> joint(nx1_ * nx2_ * ny_);
  for (std::size_t a = 0; a < nx1_; ++a)
    for (std::size_t b = 0; b < nx2_; ++b)
      for (std::size_t y = 0; y < ny_; ++y)
        joint[(a * nx2_ + b) * ny_ + y] = p_x1x2[a * nx2_ + b] * at(a, b, y);
  return joint;
}

AuxChannelU::AuxChannelU(std::size_t ny, std::size_t nu,
                         std::vector<double> rows)
    : ny_(ny), nu_(nu), p_(std::move(rows)) {
  if (ny_ == 0 || nu_ == 0 || p_.size() != ny_ * nu_)
    throw std::invalid_argument("AuxChannelU: shape mismatch");
  if (nu_ > ny_ + 4) throw std::invalid_argument("AuxChannelU: |U| > |Y|+4");
  check_rows(p_, ny_, nu_, 1e-12, "AuxChannelU");
}

AuxChannelU AuxChannelU::adder_symmetric(double alpha) {
  if (alpha < 0.0 || alpha > 0.5)
    throw std::invalid_argument("adder_symmetric: alpha outside [0,1/2]");
  std::vector<double> rows = {1.0 - alpha, alpha,   // y = 0
                              0.5,         0.5,     // y = 1
                              alpha,       1.0 - alpha};  // y = 2
  return AuxChannelU(3, 2, std::move(rows));
}

AuxChannelU AuxChannelU::identity(std::size_t ny) {
  std::vector<double> rows(ny * ny, 0.0);
  for (std::size_t y = 0; y < ny; ++y) rows[y * ny + y] = 1.0;
  return AuxChannelU(ny, ny, std::move(rows));
}

TimeShareQ::TimeShareQ(std::size_t nx1, std::size_t nx2, std::size_t nq,
                       std::vector<double> rows)
    : nx1_(nx1), nx2_(nx2), nq_(nq), p_(std::move(rows)) {
  if (nq_ == 0 || nq_ > 4 || p_.size() != nx1_ * nx2_ * nq_)
    throw std::invalid_argument("TimeShareQ: shape mismatch or |Q| > 4");
  check_rows(p_, nx1_ * nx2_, nq_, 1e-12, "TimeShareQ");
}

TimeShareQ TimeShareQ::constant(std::size_t nx1, std::size_t nx2) {
  return TimeShareQ(nx1, nx2, 1, std::vector<double>(nx1 * nx2, 1.0));
}

}  // namespace diamond
