#include "magshift/materials.hpp"

#include <cmath>
#include <string>

#include "magshift/errors.hpp"

namespace magshift {

void validate(const MaterialModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NonDispersive>) {
          if (!(m.n >= 1.0) || !std::isfinite(m.n))
            throw DomainError("nondispersive model requires n >= 1, got n = " +
                              std::to_string(m.n));
        } else if constexpr (std::is_same_v<T, Plasma>) {
          if (!(m.omega_p > 0.0) || !std::isfinite(m.omega_p))
            throw DomainError("plasma model requires omega_p > 0");
        } else if constexpr (std::is_same_v<T, LorentzDielectric>) {
          if (!(m.omega_p > 0.0) || !std::isfinite(m.omega_p))
            throw DomainError("lorentz model requires omega_p > 0");
          if (!(m.omega_T > 0.0) || !std::isfinite(m.omega_T))
            throw DomainError("lorentz model requires omega_T > 0");
        }
      },
      model);
}

const char* model_name(const MaterialModel& model) {
  switch (model.index()) {
    case 0: return "nondispersive";
    case 1: return "plasma";
    case 2: return "lorentz";
    default: return "perfect";
  }
}

bool has_finite_static_susceptibility(const MaterialModel& model) {
  return std::holds_alternative<NonDispersive>(model) ||
         std::holds_alternative<LorentzDielectric>(model);
}

double static_susceptibility(const MaterialModel& model) {
  if (const auto* nd = std::get_if<NonDispersive>(&model))
    return nd->n * nd->n - 1.0;
  if (const auto* lo = std::get_if<LorentzDielectric>(&model)) {
    const double r = lo->omega_p / lo->omega_T;
    return r * r;
  }
  throw DomainError(std::string("static susceptibility is unbounded for the ") +
                    model_name(model) + " model");
}

double epsilon_imaginary(const MaterialModel& model, double xi) {
  if (!(xi > 0.0))
    throw DomainError("epsilon_imaginary requires xi > 0");
  if (const auto* nd = std::get_if<NonDispersive>(&model))
    return nd->n * nd->n;
  if (const auto* pl = std::get_if<Plasma>(&model)) {
    const double r = pl->omega_p / xi;
    return 1.0 + r * r;
  }
  if (const auto* lo = std::get_if<LorentzDielectric>(&model))
    return 1.0 + lo->omega_p * lo->omega_p / (xi * xi + lo->omega_T * lo->omega_T);
  throw DomainError(
      "epsilon_imaginary is undefined for the perfect reflector; its "
      "reflection coefficients are the constants R_TE = -1, R_TM = +1");
}

double static_mirror_coefficient(const MaterialModel& model) {
  if (const auto* nd = std::get_if<NonDispersive>(&model)) {
    const double e0 = nd->n * nd->n;
    return (e0 - 1.0) / (e0 + 1.0);
  }
  if (const auto* lo = std::get_if<LorentzDielectric>(&model)) {
    const double chi0 = static_susceptibility(MaterialModel{*lo});
    return chi0 / (chi0 + 2.0);
  }
  return 1.0;  // plasma and perfect reflector: eps(0) -> infinity
}

double reflection_te(double eps, double eta) {
  if (!(eps >= 1.0) || !(eta >= 1.0))
    throw DomainError("reflection_te requires eps >= 1 and eta >= 1");
  // (eta - s)/(eta + s) rationalized; exact zero at eps = 1 and no
  // cancellation in the large-eta tail
  const double s = std::sqrt((eps - 1.0) + eta * eta);
  const double d = eta + s;
  return -(eps - 1.0) / (d * d);
}

double reflection_tm(double eps, double eta) {
  if (!(eps >= 1.0) || !(eta >= 1.0))
    throw DomainError("reflection_tm requires eps >= 1 and eta >= 1");
  // (eta eps - s)/(eta eps + s) rationalized the same way
  const double s = std::sqrt((eps - 1.0) + eta * eta);
  const double d = eta * eps + s;
  return (eps - 1.0) * (eta * eta * (eps + 1.0) - 1.0) / (d * d);
}

std::complex<double> reflection_te_real_axis(double omega_p, double k_z) {
  if (!(omega_p > 0.0))
    throw DomainError("reflection_te_real_axis requires omega_p > 0");
  if (!(k_z >= 0.0))
    throw DomainError("reflection_te_real_axis requires k_z >= 0");
  if (k_z >= omega_p) {
    const double s = std::sqrt((k_z - omega_p) * (k_z + omega_p));
    return {(k_z - s) / (k_z + s), 0.0};
  }
  const std::complex<double> s(0.0, std::sqrt((omega_p - k_z) * (omega_p + k_z)));
  return (k_z - s) / (k_z + s);
}

}  // namespace magshift
