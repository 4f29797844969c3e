#pragma once

#include <complex>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace surfimp {

using complex = std::complex<double>;

/// Real angular frequency omega > 0, rad/s.
struct AngularFrequency {
  double rad_s;
};

/// Point omega = i*xi on the positive imaginary frequency axis, xi in rad/s.
struct ImaginaryFrequency {
  double rad_s;
};

enum class Polarization { te, tm };
enum class Sector { propagating, evanescent };

/// Which boundary treatment a computation uses: Leontovich surface impedance,
/// or a local bulk permittivity with Fresnel coefficients.
enum class ModelTag { impedance, lifshitz_dielectric };

const char* to_string(Polarization pol);
const char* to_string(Sector sector);
const char* to_string(ModelTag tag);
ModelTag parse_model_tag(const std::string& text);

inline constexpr Polarization kPolarizations[] = {Polarization::te, Polarization::tm};

/// Dimensionless p = c k_z / omega with its sector. Propagating points have
/// real p in (0, 1]; evanescent points have p = i s, s > 0.
struct PValue {
  complex p;
  Sector sector;

  static PValue propagating(double p) { return {complex(p, 0.0), Sector::propagating}; }
  static PValue evanescent(double s) { return {complex(0.0, s), Sector::evanescent}; }
};

struct DrudeParams {
  double plasma_freq;      // Omega_p, rad/s
  double relaxation_freq;  // gamma, rad/s

  static DrudeParams from_ev(double hbar_plasma_ev, double hbar_gamma_ev);
  void validate() const;
};

/// Surface impedance sampled on real frequencies. Interpolation is linear in
/// (log omega, Re zeta) and (log omega, Im zeta); there is no extrapolation.
class ImpedanceTable {
 public:
  struct Row {
    double omega;
    double zeta_re;
    double zeta_im;
  };

  explicit ImpedanceTable(std::vector<Row> rows);

  /// Reads the `omega_rad_s,zeta_re,zeta_im` CSV format.
  static ImpedanceTable load_csv(const std::filesystem::path& path);
  static ImpedanceTable parse_csv(const std::string& text, const std::string& origin = "<memory>");

  complex at(double omega) const;
  std::span<const Row> rows() const { return rows_; }
  double omega_min() const { return rows_.front().omega; }
  double omega_max() const { return rows_.back().omega; }

 private:
  std::vector<Row> rows_;
};

/// Electromagnetic response of one mirror.
class MaterialModel {
 public:
  struct Ideal {};
  struct DrudeDielectric {
    DrudeParams params;
  };
  struct DrudeImpedance {
    DrudeParams params;
  };
  /// Frequency-independent impedance. Useful for near-ideal limits; it
  /// continues trivially onto the imaginary axis.
  struct ConstantImpedance {
    complex zeta;
  };
  struct TabulatedImpedance {
    std::shared_ptr<const ImpedanceTable> table;
  };
  using Variant =
      std::variant<Ideal, DrudeDielectric, DrudeImpedance, ConstantImpedance, TabulatedImpedance>;

  static MaterialModel ideal();
  static MaterialModel drude_dielectric(DrudeParams params);
  static MaterialModel drude_impedance(DrudeParams params);
  static MaterialModel constant_impedance(complex zeta);
  static MaterialModel tabulated(ImpedanceTable table);

  const Variant& variant() const { return variant_; }
  bool is_ideal() const;
  std::string describe() const;

 private:
  explicit MaterialModel(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

/// 1 - Omega_p^2 / [omega (omega + i gamma)].
complex drude_epsilon(AngularFrequency omega, const DrudeParams& params);
/// 1 + Omega_p^2 / [xi (xi + gamma)], the continuation to omega = i xi.
double drude_epsilon(ImaginaryFrequency xi, const DrudeParams& params);

/// zeta = 1/sqrt(eps) on the branch Re zeta >= 0. When Re zeta vanishes
/// exactly (lossless, eps < 0) the root with Im sqrt(eps) >= 0 is taken.
complex impedance_from_epsilon(complex eps);

complex impedance_of(const MaterialModel& model, AngularFrequency omega);
/// Impedance on the imaginary axis (real and non-negative). Tabulated
/// impedances cannot be continued and raise ModelMismatchError.
double impedance_of(const MaterialModel& model, ImaginaryFrequency xi);

/// Permittivity for the dielectric treatment. Only Drude models carry one;
/// the ideal mirror is handled as eps -> infinity by the reflection routines.
complex permittivity_of(const MaterialModel& model, AngularFrequency omega);
double permittivity_of(const MaterialModel& model, ImaginaryFrequency xi);

/// p = sqrt(1 - (c kperp / omega)^2) with Re p >= 0, Im p >= 0. kperp in 1/cm.
/// kperp == omega/c gives p = 0, tagged propagating.
PValue p_of(AngularFrequency omega, double kperp);

/// Impedance reflection coefficients:
///   r_TM = (p - zeta)/(p + zeta),  r_TE = (zeta p - 1)/(zeta p + 1).
/// `omega` only feeds the error context.
complex reflection_impedance(const PValue& p, complex zeta, Polarization pol, double omega = 0.0);

/// Fresnel coefficients of a dielectric half space with p_m = sqrt(eps - 1 + p^2)
/// (Re p_m >= 0, Im p_m >= 0):
///   r_TE = (p - p_m)/(p + p_m),  r_TM = (eps p - p_m)/(eps p + p_m).
complex reflection_fresnel(const PValue& p, complex eps, Polarization pol, double omega = 0.0);

/// Reflection of `model` at a real frequency under the treatment `tag`.
complex reflection(const MaterialModel& model, ModelTag tag, AngularFrequency omega,
                   const PValue& p, Polarization pol);

/// Reflection at omega = i xi. `p_tilde` = c q / xi >= 1 with
/// q = sqrt(xi^2/c^2 + kperp^2).
double reflection(const MaterialModel& model, ModelTag tag, ImaginaryFrequency xi,
                  double p_tilde, Polarization pol);

/// Analytic xi -> 0+ limit of the imaginary-axis reflection coefficient at
/// fixed kperp > 0 (1/cm). Feeds the n = 0 Matsubara term.
double static_reflection(const MaterialModel& model, ModelTag tag, double kperp, Polarization pol);

/// Human-readable statement of the xi -> 0 limits for `model` under `tag`.
std::string static_limit_description(const MaterialModel& model, ModelTag tag);

}  // namespace surfimp
