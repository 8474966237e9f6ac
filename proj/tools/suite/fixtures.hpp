#pragma once

#include <string>
#include <vector>

#include "pdk/cnd.hpp"
#include "pdk/models.hpp"
#include "pdk/spaces.hpp"
#include "pdk/special_functions.hpp"

namespace pdk::suite {

// Building blocks of the two worked examples.

/// g(t) = 3 - cos t on the 2-sphere.
CNDFunction example1_g();
/// h(u, v) = 1 + sin u + v^s on [0, pi/2] x R^2.
CNDFunction example1_h(double s);
/// S^2, [0, pi/2], R^2
ProductSpace example1_spaces();

/// g(t) = c + t^s on R.
CNDFunction example2_g(double c, double s);
/// h(u, v) = c + u + v on S^2 x S^2 (geodesic distances).
CNDFunction example2_h(double c);
/// R, S^2, S^2
ProductSpace example2_spaces();

StieltjesFunction reciprocal();  // 1 / w

struct ModelFixture {
  std::string name;
  KernelModel model;
};

struct ClauseFixture {
  std::string name;
  KernelModel model;
  ViolatedClause clause;
};

struct CndFixture {
  std::string name;
  CNDFunction phi;
  ProductSpace spaces;
};

/// G_r on S^2 x [0, pi/2] x R^2 covering {D_f > 0, D_f = 0} x {r = lambda, r > lambda}.
std::vector<ModelFixture> pd_fixtures();
/// Every fixture whose condition report is SPD_guaranteed, mirrors included.
std::vector<ModelFixture> spd_fixtures();
/// One model per violated clause, for the Stieltjes and complete Bernstein families.
std::vector<ClauseFixture> clause_fixtures();
/// CND functions built by the three combinators.
std::vector<CndFixture> cnd_fixtures();
/// Both worked examples under the sufficient parameterizations.
std::vector<ModelFixture> example_fixtures();
/// Two-term generators at the critical order.
std::vector<ModelFixture> open_case_fixtures();

}  // namespace pdk::suite
