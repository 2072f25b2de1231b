#pragma once

#include "diamond/entropy.hpp"
#include "diamond/report.hpp"

namespace diamond {

// Binary adder network; normalized so that c1 <= c2.
struct AdderNet {
  Bits c1 = 0.0;
  Bits c2 = 0.0;

  AdderNet(Bits a, Bits b) : c1(a <= b ? a : b), c2(a <= b ? b : a) {}
};

// Doubly symmetric input with parameter p: the three rate constraints.
BoundReport adder_lower(const AdderNet& net, Prob p);

// Exact capacity: max over p in [0, 1/2] of adder_lower, with regime label.
BoundReport adder_capacity(const AdderNet& net);

// First converse bound in closed form (aux channel already optimized out).
BoundReport adder_upper_cor2(const AdderNet& net);

// The alpha <= 1/2 making the aux output a sufficient statistic:
// alpha(1-alpha) = (p/(2(1-p)))^2.
Prob adder_aux_alpha(Prob p);

// I(X1;X2|U) for a doubly symmetric input p and the symmetric aux alpha.
Bits mi_given_u(Prob p, Prob alpha);

// Generalized Mrs. Gerber function:
// h2(a*(y/2+(1-y)h2_inv(((x-h2(y))^+)/(1-y)))) - h2(a*(y/2)).
Bits gerber_g(Bits x, Prob y, Prob alpha);

struct GerberKernels {
  double r = 0.0;       // r(z) = z(1-z)ln((1-z)/z)
  double rprime = 0.0;  // r'(z) = (1-2z)ln((1-z)/z) - 1
  double t = 0.0;       // the Hessian kernel
  double f = 0.0;       // t(0,y,z) / ((1-y)^2 (1-2z)^4)
};

// Kernels behind the convexity certificate. Throws std::domain_error on
// the singular boundaries (alpha = 1/2 for t; y = 1 or z = 1/2 for f).
GerberKernels gerber_kernels(Prob alpha, Prob y, Prob z);

// Second converse bound: explicit constraints plus the implicit
// self-referential constraint solved by bisection; alpha from the eta
// construction with a small grid fallback; maximized over q.
BoundReport adder_upper_thm3(const AdderNet& net);

// Variant bounding the aux entropy with the classical Mrs. Gerber lemma.
BoundReport adder_upper_mgl(const AdderNet& net);

}  // namespace diamond
