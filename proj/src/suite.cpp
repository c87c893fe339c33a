#include "vex/suite.hpp"

#include <cmath>

namespace vex {

namespace {

double chi_box(double x, double lo, double hi) {
  return (x >= lo && x < hi) ? 1.0 : 0.0;
}

double bump_pow(double u2, int k) {
  const double v = 1.0 - u2;
  return v > 0.0 ? std::pow(v, k) : 0.0;
}

std::vector<SuiteCase> suite_1d(double s) {
  auto wrap = [s](std::function<double(double)> g) {
    return [s, g](const Point& x) { return g(x[0] / s); };
  };
  std::vector<SuiteCase> v;
  v.push_back({"chi_unit", wrap([](double u) { return chi_box(u, 0, 1); })});
  v.push_back({"chi_sym", wrap([](double u) { return chi_box(u, -1, 1); })});
  v.push_back(
      {"chi_small", wrap([](double u) { return chi_box(u, -0.5, -0.25); })});
  v.push_back({"chi_scaled",
               wrap([](double u) { return 0.75 * chi_box(u, 0, 0.5); })});
  v.push_back(
      {"bump_cubed", wrap([](double u) { return bump_pow(u * u, 3); })});
  v.push_back(
      {"bump_fourth", wrap([](double u) { return bump_pow(u * u, 4); })});
  v.push_back({"bump_offcenter", wrap([](double u) {
                 const double t = 2.0 * u - 1.0;
                 return bump_pow(t * t, 3);
               })});
  v.push_back({"bump_narrow", wrap([](double u) {
                 return bump_pow(4.0 * u * u, 3);
               })});
  v.push_back({"oscillatory", wrap([](double u) {
                 const double sn = std::sin(2.0 * M_PI * u);
                 return sn * sn * bump_pow(u * u, 3);
               })});
  v.push_back({"bump_signed",
               wrap([](double u) { return u * bump_pow(u * u, 3); })});
  return v;
}

std::vector<SuiteCase> suite_2d(double s) {
  auto wrap = [s](std::function<double(double, double)> g) {
    return [s, g](const Point& x) { return g(x[0] / s, x[1] / s); };
  };
  std::vector<SuiteCase> v;
  v.push_back({"chi_unit", wrap([](double u, double w) {
                 return chi_box(u, 0, 1) * chi_box(w, 0, 1);
               })});
  v.push_back({"chi_sym", wrap([](double u, double w) {
                 return chi_box(u, -1, 1) * chi_box(w, -1, 1);
               })});
  v.push_back({"chi_small", wrap([](double u, double w) {
                 return chi_box(u, -0.5, -0.25) * chi_box(w, 0, 0.25);
               })});
  v.push_back({"chi_scaled", wrap([](double u, double w) {
                 return 0.75 * chi_box(u, 0, 0.5) * chi_box(w, 0, 0.5);
               })});
  v.push_back({"bump_cubed", wrap([](double u, double w) {
                 return bump_pow(u * u + w * w, 3);
               })});
  v.push_back({"bump_fourth", wrap([](double u, double w) {
                 return bump_pow(u * u + w * w, 4);
               })});
  v.push_back({"bump_offcenter", wrap([](double u, double w) {
                 const double t = 2.0 * (u - 0.5);
                 return bump_pow(t * t + 4.0 * w * w, 3);
               })});
  v.push_back({"bump_narrow", wrap([](double u, double w) {
                 return bump_pow(4.0 * (u * u + w * w), 3);
               })});
  v.push_back({"oscillatory", wrap([](double u, double w) {
                 const double sn = std::sin(2.0 * M_PI * u);
                 return sn * sn * bump_pow(u * u + w * w, 3);
               })});
  v.push_back({"bump_signed", wrap([](double u, double w) {
                 return u * bump_pow(u * u + w * w, 3);
               })});
  return v;
}

}  // namespace

std::vector<SuiteCase> standard_suite(int dim, double scale) {
  if (dim != 1 && dim != 2)
    throw InvalidDimension("standard_suite: dim must be 1 or 2");
  if (!(scale > 0.0)) throw ConfigError("standard_suite: scale > 0 required");
  return dim == 1 ? suite_1d(scale) : suite_2d(scale);
}

std::vector<SuiteCase> smooth_suite(int dim, double scale) {
  std::vector<SuiteCase> all = standard_suite(dim, scale);
  return {all.begin() + 4, all.end()};
}

std::vector<SuiteCase> suite_by_id(const std::string& id, int dim,
                                   double scale) {
  if (id == "standard") return standard_suite(dim, scale);
  if (id == "smooth") return smooth_suite(dim, scale);
  if (id == "chi") {
    std::vector<SuiteCase> all = standard_suite(dim, scale);
    return {all.begin(), all.begin() + 4};
  }
  throw ConfigError("suite_by_id: unknown suite '" + id + "'");
}

SampledFunction sample_case(const GridSpec& grid, const SuiteCase& c) {
  return sample(grid, c.fn, c.id);
}

}  // namespace vex
