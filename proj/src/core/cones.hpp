#pragma once

#include <vector>

#include "core/linalg.hpp"

namespace nsconic {

enum class ConeKind { NonnegOrthant, Exponential, Power };

struct ConeBlock {
    ConeKind kind;
    int dim;
    double exponent; // only for Power, in (0,1)
};

// Ordered Cartesian product of cone blocks. Vectors over the product are
// concatenations in declaration order.
class ConeSpec {
  public:
    static ConeSpec orthant(int n);
    static ConeSpec exponential();
    static ConeSpec power(double a);

    ConeSpec &append(const ConeSpec &other);

    const std::vector<ConeBlock> &blocks() const { return blocks_; }
    int dim() const { return dim_; }
    double barrier_degree() const { return nu_; } // nu: sum over blocks

  private:
    std::vector<ConeBlock> blocks_;
    int dim_ = 0;
    double nu_ = 0.0;
};

// F, F', F'' at an interior point, plus the barrier parameter.
struct BarrierEval {
    double value = 0.0;
    Vec gradient;
    SymMatrix hessian;
    double nu = 0.0;
};

BarrierEval barrier_eval(const ConeSpec &cone, VecView x);

// Positive iff strictly interior; blockwise minimum over the product.
double membership_margin(const ConeSpec &cone, VecView x);
double dual_membership_margin(const ConeSpec &cone, VecView s);

// x~ = -F*'(s), the unique interior solution of F'(x~) = -s, found blockwise
// by damped Newton. `hint` (optional, full product dimension) seeds the
// iteration.
Vec conjugate_shadow(const ConeSpec &cone, VecView s, VecView hint = {});

// The self-scaled starting point x0 with x0 = -F'(x0), memoized per block.
Vec initial_point(const ConeSpec &cone);

} // namespace nsconic
