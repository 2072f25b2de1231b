#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "diamond/entropy.hpp"
#include "diamond/mac.hpp"
#include "diamond/opt.hpp"
#include "diamond/report.hpp"

namespace diamond {

// Joint pmf over (U, X1, X2, Y) with entropies of arbitrary variable
// subsets. Subsets are bitmasks of the VarMask constants.
class JointUXY {
 public:
  static constexpr unsigned kU = 1, kX1 = 2, kX2 = 4, kY = 8;

  // p(u,x1,x2,y) = joint(u,x1,x2) * mac(y | x1,x2).
  JointUXY(const Joint3PMF& joint, const MacChannel& mac);
  // p(u,x1,x2,y) = p(x1,x2) * mac(y|x1,x2) * aux(u|y).
  JointUXY(const std::vector<double>& p_x1x2, const MacChannel& mac,
           const AuxChannelU& aux);
  // No Y: p(u,x1,x2) with |Y| = 1.
  explicit JointUXY(const Joint3PMF& joint);

  Bits entropy_of(unsigned mask) const;
  // I(A;B|C) for disjoint masks; C may be 0.
  Bits mi(unsigned a, unsigned b, unsigned c = 0) const;

 private:
  std::size_t nu_, nx1_, nx2_, ny_;
  std::vector<double> p_;  // [u][x1][x2][y]
};

// Value of the achievable region for a fixed joint input pmf: the minimum
// of the five rate constraints, clamped at zero.
BoundReport lower_region_value(const Joint3PMF& joint, const MacChannel& mac,
                               const BitPipes& pipes);

// Maximizes lower_region_value over p(u,x1,x2) with the given |U|.
// Heuristic but always a valid achievable rate.
BoundReport lower_bound_optimize(const MacChannel& mac, const BitPipes& pipes,
                                 std::size_t nu,
                                 const OptimConfig& config = {});

struct RateTuple {
  double r12 = 0, r1 = 0, r2 = 0, r1p = 0, r2p = 0;
};

struct FmeResult {
  bool feasible = false;
  RateTuple tuple;
};

// Feasibility of the pre-elimination rate-split constraints (closed form)
// for total rate R, via exact 5-variable Fourier-Motzkin elimination.
FmeResult pre_fme_feasible(Bits rate, const Joint3PMF& joint,
                           const MacChannel& mac, const BitPipes& pipes);

// Max over p(x1,x2) of the four cut values.
BoundReport cutset_bound(const MacChannel& mac, const BitPipes& pipes,
                         const OptimConfig& config = {});

// |I(X1;X2) - [I(X1X2;U) - I(X1;U|X2) - I(X2;U|X1) + I(X1;X2|U)]|.
Bits mi_identity_residual(const Joint3PMF& joint);

// Five constraint values of the first converse bound, for a fixed input
// pmf p(x1,x2) (row-major nx1 x nx2) and a fixed reverse channel p(u|y).
BoundReport thm2_value_at(const MacChannel& mac, const BitPipes& pipes,
                          const std::vector<double>& p_x1x2,
                          const AuxChannelU& aux);

// Inner minimization over p(u|y) for a fixed input pmf: multi-start
// descent plus structured starts. Returns the best (smallest) value found
// and the minimizing channel.
std::pair<Bits, AuxChannelU> thm2_inner_min(const MacChannel& mac,
                                            const BitPipes& pipes,
                                            const std::vector<double>& p_x1x2,
                                            std::size_t nu,
                                            const OptimConfig& config = {});

// Saddle evaluation max_p min_{p(u|y)}: alternates concave ascent in p
// with the inner minimization. `value` is the saddle estimate; the witness
// carries the final input pmf. The report's "safe" entry (stored as
// constraint "safe") re-maximizes over p with the best aux fixed, which is
// a certified upper bound.
BoundReport upper_bound_thm2(const MacChannel& mac, const BitPipes& pipes,
                             std::size_t nu, const OptimConfig& config = {});

// Second converse bound in its loosened order: the aux channel is fixed
// up front and the bound is maximized over p(q,x1,x2) with |Q| <= 4.
BoundReport upper_bound_thm3_loose(const MacChannel& mac,
                                   const BitPipes& pipes,
                                   const AuxChannelU& aux, std::size_t nq = 4,
                                   const OptimConfig& config = {});

}  // namespace diamond
