#include "fixtures.hpp"

#include <numbers>

namespace pdk::suite {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

DiscreteMeasure atoms(std::vector<Atom> a) { return DiscreteMeasure(std::move(a)); }

StieltjesFunction bounded_two_atom() {
  return StieltjesFunction(1.0, 0.5, 0.0, atoms({{1.0, 1.0}, {4.0, 0.5}}));
}

StieltjesFunction singular_with_atom() {
  return StieltjesFunction(0.5, 0.25, 1.0, atoms({{2.0, 3.0}}));
}

/// h(u, v) = 1 + u, ignoring v.
CNDFunction h_constant_in_v() {
  return shift(1.0, bernstein_compose(BernsteinFunction::identity(), sine(), constant(0.0)));
}

ModelFixture g_model(std::string name, StieltjesFunction f, double r, double s = 1.5) {
  return {std::move(name),
          KernelModel(StieltjesG{std::move(f), example1_g(), example1_h(s), r}, example1_spaces())};
}

}  // namespace

CNDFunction example1_g() { return minus_cos(3.0); }

CNDFunction example1_h(double s) {
  return shift(1.0, bernstein_compose(BernsteinFunction::identity(), sine(), power(s)));
}

ProductSpace example1_spaces() { return {SphereGeodesic{2}, Interval{kHalfPi}, Euclidean{2}}; }

CNDFunction example2_g(double c, double s) { return shift(c, power(s)); }

CNDFunction example2_h(double c) {
  return shift(c, bernstein_compose(BernsteinFunction::identity(), linear(), linear()));
}

ProductSpace example2_spaces() { return {Euclidean{1}, SphereGeodesic{2}, SphereGeodesic{2}}; }

StieltjesFunction reciprocal() { return StieltjesFunction(1.0, 0.0, 1.0); }

std::vector<ModelFixture> pd_fixtures() {
  std::vector<ModelFixture> out;
  out.push_back(g_model("G_r f=1/w r=1", reciprocal(), 1.0));
  out.push_back(g_model("G_r f=1/w r=2", reciprocal(), 2.0));
  out.push_back(g_model("G_r bounded f r=1", bounded_two_atom(), 1.0));
  out.push_back(g_model("G_r bounded f r=2.5", bounded_two_atom(), 2.5));
  out.push_back(g_model("G_r singular f with atom r=0.5", singular_with_atom(), 0.5));
  return out;
}

std::vector<ModelFixture> spd_fixtures() {
  std::vector<ModelFixture> out;
  for (auto& m : pd_fixtures()) {
    if (spd_report(m.model).verdict == SpdVerdict::SpdGuaranteed) out.push_back(std::move(m));
  }
  const ProductSpace ex1 = example1_spaces();
  const auto g = example1_g();
  const auto h = example1_h(1.5);

  out.push_back({"H_r f=1/w r=2", KernelModel(StieltjesH{reciprocal(), g, h, 2.0}, ex1)});
  out.push_back({"H_r bounded f r=1", KernelModel(StieltjesH{bounded_two_atom(), g, h, 1.0}, ex1)});
  out.push_back({"I_r f=w r=2",
                 KernelModel(CompleteBernsteinI{CompleteBernsteinFunction(1.0, 0.0, 1.0), g, h, 2.0},
                             ex1)});
  out.push_back(
      {"I_r f=0.5+w/(w+1) r=1",
       KernelModel(CompleteBernsteinI{CompleteBernsteinFunction(1.0, 0.5, 0.0, atoms({{1.0, 1.0}})),
                                      g, h, 1.0},
                   ex1)});
  out.push_back({"J_r f=w r=2",
                 KernelModel(CompleteBernsteinJ{CompleteBernsteinFunction(1.0, 0.0, 1.0), g, h, 2.0},
                             ex1)});
  out.push_back(
      {"J_r f=(w/(w+1))^2+(w/(w+2))^2 r=2",
       KernelModel(CompleteBernsteinJ{CompleteBernsteinFunction(
                                          2.0, 0.0, 0.0, atoms({{1.0, 1.0}, {2.0, 1.0}})),
                                      g, h, 2.0},
                   ex1)});
  out.push_back({"F_r f=1/(1+w) r=1 on S^2 x [0,pi/2]",
                 KernelModel(TwoSpaceGneiting{StieltjesFunction(1.0, 0.0, 0.0, atoms({{1.0, 1.0}})),
                                              g, shift(1.0, sine()), 1.0},
                             ProductSpace{SphereGeodesic{2}, Interval{kHalfPi}})});
  out.push_back(
      {"product exp(-g) / (1 + h)",
       KernelModel(ProductModel{ExponentialMixture(DiscreteMeasure({{1.0, 1.0}},
                                                                   DiscreteMeasure::Support::Closed)),
                                StieltjesFunction(1.0, 0.0, 0.0, atoms({{1.0, 1.0}})), g, h},
                   ex1)});
  for (auto& m : example_fixtures()) out.push_back(std::move(m));
  return out;
}

std::vector<ClauseFixture> clause_fixtures() {
  const ProductSpace ex1 = example1_spaces();
  const auto g = example1_g();
  const auto h = example1_h(1.5);
  const auto g_const = constant(2.0);
  const auto h_flat = h_constant_in_v();
  const StieltjesFunction f_const(1.0, 1.0, 0.0);
  const CompleteBernsteinFunction b_const(1.0, 1.0, 0.0);
  const CompleteBernsteinFunction b_identity(1.0, 0.0, 1.0);

  std::vector<ClauseFixture> out;
  out.push_back({"G_r g constant", KernelModel(StieltjesG{reciprocal(), g_const, h, 2.0}, ex1),
                 ViolatedClause::GNotStrict});
  out.push_back({"G_r h constant in v", KernelModel(StieltjesG{reciprocal(), g, h_flat, 2.0}, ex1),
                 ViolatedClause::HNotStrict});
  out.push_back({"G_r f constant", KernelModel(StieltjesG{f_const, g, h, 1.0}, ex1),
                 ViolatedClause::ConstantInX});
  out.push_back({"G_r f=1/w r=lambda", KernelModel(StieltjesG{reciprocal(), g, h, 1.0}, ex1),
                 ViolatedClause::ConstantInYZ});
  out.push_back({"H_r g constant", KernelModel(StieltjesH{reciprocal(), g_const, h, 2.0}, ex1),
                 ViolatedClause::GNotStrict});
  out.push_back({"H_r f constant", KernelModel(StieltjesH{f_const, g, h, 1.0}, ex1),
                 ViolatedClause::ConstantInYZ});
  out.push_back({"I_r f constant", KernelModel(CompleteBernsteinI{b_const, g, h, 1.0}, ex1),
                 ViolatedClause::ConstantInYZ});
  out.push_back({"I_r f=w r=lambda", KernelModel(CompleteBernsteinI{b_identity, g, h, 1.0}, ex1),
                 ViolatedClause::ConstantInX});
  out.push_back({"J_r h constant in v",
                 KernelModel(CompleteBernsteinJ{b_identity, g, h_flat, 2.0}, ex1),
                 ViolatedClause::HNotStrict});
  out.push_back({"J_r f=w r=lambda", KernelModel(CompleteBernsteinJ{b_identity, g, h, 1.0}, ex1),
                 ViolatedClause::ConstantInYZ});
  return out;
}

std::vector<CndFixture> cnd_fixtures() {
  const BernsteinFunction one_minus_exp(0.0, 0.0, atoms({{1.0, 1.0}}));
  std::vector<CndFixture> out;
  out.push_back({"compose 1-exp(-t-u) on S^2 x S^2",
                 bernstein_compose(one_minus_exp, linear(), linear()),
                 {SphereGeodesic{2}, SphereGeodesic{2}}});
  out.push_back({"compose t^2+u on R^2 x [0,2]",
                 bernstein_compose(BernsteinFunction::identity(), power(2.0), linear()),
                 {Euclidean{2}, Interval{2.0}}});
  out.push_back({"compose 1-exp(-g-h) with the first example's g and h",
                 bernstein_compose(one_minus_exp, example1_g(), example1_h(1.5)),
                 example1_spaces()});
  out.push_back({"cross f=w h=1 n=2",
                 euclidean_cross(BernsteinFunction::identity(), constant(1.0), 2),
                 {Euclidean{2}, Interval{1.0}}});
  out.push_back({"cross f=0.5+w h=1+sin u n=1",
                 euclidean_cross(BernsteinFunction(0.5, 1.0), shift(1.0, sine()), 1),
                 {Euclidean{1}, Interval{kHalfPi}}});
  out.push_back(
      {"complement M=1 of F_r with f=1/(1+w), g=t, h=1+u",
       bounded_complement(1.0, TwoSpaceGneiting{StieltjesFunction(1.0, 0.0, 0.0, atoms({{1.0, 1.0}})),
                                                linear(), shift(1.0, linear()), 1.0}),
       {SphereGeodesic{2}, Euclidean{1}}});
  out.push_back({"complement M=2 of F_r with bounded two-atom f",
                 bounded_complement(2.0, TwoSpaceGneiting{bounded_two_atom(), example1_g(),
                                                          shift(1.0, sine()), 1.0}),
                 {SphereGeodesic{2}, Interval{kHalfPi}}});
  return out;
}

std::vector<ModelFixture> example_fixtures() {
  std::vector<ModelFixture> out;
  for (double s : {1.0, 1.5, 2.0}) {
    const std::string tag = " (first example, s=" + std::string(s == 1.0 ? "1" : s == 1.5 ? "1.5" : "2") + ")";
    out.push_back(g_model("G_r f=1/w r=2" + tag, reciprocal(), 2.0, s));
    out.push_back(g_model("G_r bounded f r=1" + tag, bounded_two_atom(), 1.0, s));
  }
  const ProductSpace ex2 = example2_spaces();
  const auto g = example2_g(1.0, 1.5);
  const auto h = example2_h(1.0);
  out.push_back({"G_r f=1/w r=2 (second example)",
                 KernelModel(StieltjesG{reciprocal(), g, h, 2.0}, ex2)});
  out.push_back({"G_r f=1+2/(1+w) r=2 (second example)",
                 KernelModel(StieltjesG{StieltjesFunction(1.0, 1.0, 0.0, atoms({{1.0, 2.0}})), g, h,
                                        2.0},
                             ex2)});
  return out;
}

std::vector<ModelFixture> open_case_fixtures() {
  const ProductSpace ex1 = example1_spaces();
  const auto g = example1_g();
  const auto h = example1_h(1.5);
  const StieltjesFunction two_term(1.0, 1.0, 1.0);
  const CompleteBernsteinFunction b_two_term(1.0, 1.0, 1.0);
  std::vector<ModelFixture> out;
  out.push_back({"G_r f=1+1/w r=1", KernelModel(StieltjesG{two_term, g, h, 1.0}, ex1)});
  out.push_back({"H_r f=1+1/w r=1", KernelModel(StieltjesH{two_term, g, h, 1.0}, ex1)});
  out.push_back({"I_r f=1+w r=1", KernelModel(CompleteBernsteinI{b_two_term, g, h, 1.0}, ex1)});
  out.push_back({"J_r f=1+w r=1", KernelModel(CompleteBernsteinJ{b_two_term, g, h, 1.0}, ex1)});
  out.push_back({"F_r f=1+1/w r=1",
                 KernelModel(TwoSpaceGneiting{two_term, g, shift(1.0, sine()), 1.0},
                             ProductSpace{SphereGeodesic{2}, Interval{kHalfPi}})});
  return out;
}

}  // namespace pdk::suite
