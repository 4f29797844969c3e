#include "surfimp/materials.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "surfimp/constants.hpp"
#include "surfimp/errors.hpp"

namespace surfimp {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string fmt_complex(complex z) {
  return "(" + fmt_double(z.real()) + ", " + fmt_double(z.imag()) + ")";
}

// sqrt on the branch Re >= 0, Im >= 0 whenever such a root exists.
complex upper_sqrt(complex z) {
  if (z.imag() == 0.0) z = complex(z.real(), 0.0);  // drop a signed -0
  complex w = std::sqrt(z);
  if (w.real() < 0.0 || (w.real() == 0.0 && w.imag() < 0.0)) w = -w;
  return w;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite, got " + fmt_double(v));
  }
}

double trim_parse(std::string_view field, const std::string& origin, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() &&
         (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw IoError(origin + ":" + std::to_string(line) + ": malformed number '" +
                  std::string(field) + "'");
  }
  return value;
}

}  // namespace

const char* to_string(Polarization pol) { return pol == Polarization::te ? "TE" : "TM"; }

const char* to_string(Sector sector) {
  return sector == Sector::propagating ? "propagating" : "evanescent";
}

const char* to_string(ModelTag tag) {
  return tag == ModelTag::impedance ? "impedance" : "lifshitz-dielectric";
}

ModelTag parse_model_tag(const std::string& text) {
  if (text == "impedance") return ModelTag::impedance;
  if (text == "lifshitz-dielectric" || text == "lifshitz") return ModelTag::lifshitz_dielectric;
  throw UsageError("unknown model tag '" + text + "'");
}

DrudeParams DrudeParams::from_ev(double hbar_plasma_ev, double hbar_gamma_ev) {
  DrudeParams p{constants::ev_to_rad_per_s(hbar_plasma_ev),
                constants::ev_to_rad_per_s(hbar_gamma_ev)};
  p.validate();
  return p;
}

void DrudeParams::validate() const {
  require_positive(plasma_freq, "plasma frequency");
  if (!(relaxation_freq >= 0.0) || !std::isfinite(relaxation_freq)) {
    throw DomainError("relaxation frequency must be >= 0, got " + fmt_double(relaxation_freq));
  }
}

// ---------------------------------------------------------------------------
// ImpedanceTable

ImpedanceTable::ImpedanceTable(std::vector<Row> rows) : rows_(std::move(rows)) {
  if (rows_.size() < 2) throw DomainError("impedance table needs at least two rows");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Row& r = rows_[i];
    require_positive(r.omega, "tabulated omega");
    if (!std::isfinite(r.zeta_re) || !std::isfinite(r.zeta_im)) {
      throw DomainError("non-finite impedance in table row " + std::to_string(i));
    }
    if (r.zeta_re < 0.0) {
      throw DomainError("impedance table row " + std::to_string(i) +
                        " violates passivity (Re zeta < 0)");
    }
    if (i > 0 && !(r.omega > rows_[i - 1].omega)) {
      throw DomainError("impedance table omega must be strictly increasing (row " +
                        std::to_string(i) + ")");
    }
  }
}

ImpedanceTable ImpedanceTable::parse_csv(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!header_seen) {
      if (line != "omega_rad_s,zeta_re,zeta_im") {
        throw IoError(origin + ": expected header 'omega_rad_s,zeta_re,zeta_im', got '" + line +
                      "'");
      }
      header_seen = true;
      continue;
    }
    std::string_view view(line);
    const auto c1 = view.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : view.find(',', c1 + 1);
    if (c2 == std::string_view::npos || view.find(',', c2 + 1) != std::string_view::npos) {
      throw IoError(origin + ":" + std::to_string(line_no) + ": expected three columns");
    }
    rows.push_back({trim_parse(view.substr(0, c1), origin, line_no),
                    trim_parse(view.substr(c1 + 1, c2 - c1 - 1), origin, line_no),
                    trim_parse(view.substr(c2 + 1), origin, line_no)});
  }
  if (!header_seen) throw IoError(origin + ": empty impedance table");
  return ImpedanceTable(std::move(rows));
}

ImpedanceTable ImpedanceTable::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open impedance table " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path.string());
}

complex ImpedanceTable::at(double omega) const {
  if (!(omega >= omega_min() && omega <= omega_max())) {
    throw RangeError("omega " + fmt_double(omega) + " outside tabulated impedance range [" +
                     fmt_double(omega_min()) + ", " + fmt_double(omega_max()) + "]");
  }
  auto it = std::lower_bound(rows_.begin(), rows_.end(), omega,
                             [](const Row& r, double w) { return r.omega < w; });
  if (it->omega == omega) return {it->zeta_re, it->zeta_im};
  const Row& hi = *it;
  const Row& lo = *(it - 1);
  const double t = std::log(omega / lo.omega) / std::log(hi.omega / lo.omega);
  return {lo.zeta_re + t * (hi.zeta_re - lo.zeta_re), lo.zeta_im + t * (hi.zeta_im - lo.zeta_im)};
}

// ---------------------------------------------------------------------------
// MaterialModel

MaterialModel MaterialModel::ideal() { return MaterialModel(Ideal{}); }

MaterialModel MaterialModel::drude_dielectric(DrudeParams params) {
  params.validate();
  return MaterialModel(DrudeDielectric{params});
}

MaterialModel MaterialModel::drude_impedance(DrudeParams params) {
  params.validate();
  return MaterialModel(DrudeImpedance{params});
}

MaterialModel MaterialModel::constant_impedance(complex zeta) {
  if (!(zeta.real() >= 0.0) || !std::isfinite(zeta.imag())) {
    throw DomainError("constant impedance must satisfy Re zeta >= 0, got " + fmt_complex(zeta));
  }
  return MaterialModel(ConstantImpedance{zeta});
}

MaterialModel MaterialModel::tabulated(ImpedanceTable table) {
  return MaterialModel(TabulatedImpedance{std::make_shared<const ImpedanceTable>(std::move(table))});
}

bool MaterialModel::is_ideal() const {
  if (std::holds_alternative<Ideal>(variant_)) return true;
  if (auto* c = std::get_if<ConstantImpedance>(&variant_)) return c->zeta == complex(0.0, 0.0);
  return false;
}

std::string MaterialModel::describe() const {
  struct Visitor {
    std::string operator()(const Ideal&) const { return "ideal"; }
    std::string operator()(const DrudeDielectric& d) const {
      return "drude-dielectric(Omega_p=" + fmt_double(d.params.plasma_freq) +
             " rad/s, gamma=" + fmt_double(d.params.relaxation_freq) + " rad/s)";
    }
    std::string operator()(const DrudeImpedance& d) const {
      return "drude-impedance(Omega_p=" + fmt_double(d.params.plasma_freq) +
             " rad/s, gamma=" + fmt_double(d.params.relaxation_freq) + " rad/s)";
    }
    std::string operator()(const ConstantImpedance& c) const {
      return "constant-impedance" + fmt_complex(c.zeta);
    }
    std::string operator()(const TabulatedImpedance& t) const {
      return "tabulated-impedance(" + std::to_string(t.table->rows().size()) + " rows)";
    }
  };
  return std::visit(Visitor{}, variant_);
}

// ---------------------------------------------------------------------------
// Permittivity and impedance

complex drude_epsilon(AngularFrequency omega, const DrudeParams& params) {
  require_positive(omega.rad_s, "omega");
  const double w = omega.rad_s;
  const double wp2 = params.plasma_freq * params.plasma_freq;
  return complex(1.0, 0.0) - wp2 / (w * complex(w, params.relaxation_freq));
}

double drude_epsilon(ImaginaryFrequency xi, const DrudeParams& params) {
  require_positive(xi.rad_s, "xi");
  const double x = xi.rad_s;
  return 1.0 + params.plasma_freq * params.plasma_freq / (x * (x + params.relaxation_freq));
}

complex impedance_from_epsilon(complex eps) {
  if (eps == complex(0.0, 0.0)) {
    throw SingularityError("impedance undefined at eps = 0", 0.0, complex(0.0, 0.0));
  }
  // Principal sqrt has Re >= 0, so 1/sqrt(eps) = conj(sqrt)/|sqrt|^2 also has Re >= 0.
  return 1.0 / upper_sqrt(eps);
}

namespace {

const DrudeParams* drude_params(const MaterialModel& model) {
  if (auto* d = std::get_if<MaterialModel::DrudeDielectric>(&model.variant())) return &d->params;
  if (auto* d = std::get_if<MaterialModel::DrudeImpedance>(&model.variant())) return &d->params;
  return nullptr;
}

}  // namespace

complex impedance_of(const MaterialModel& model, AngularFrequency omega) {
  require_positive(omega.rad_s, "omega");
  const auto& v = model.variant();
  if (std::holds_alternative<MaterialModel::Ideal>(v)) return {0.0, 0.0};
  if (auto* c = std::get_if<MaterialModel::ConstantImpedance>(&v)) return c->zeta;
  if (auto* t = std::get_if<MaterialModel::TabulatedImpedance>(&v)) return t->table->at(omega.rad_s);
  return impedance_from_epsilon(drude_epsilon(omega, *drude_params(model)));
}

double impedance_of(const MaterialModel& model, ImaginaryFrequency xi) {
  require_positive(xi.rad_s, "xi");
  const auto& v = model.variant();
  if (std::holds_alternative<MaterialModel::Ideal>(v)) return 0.0;
  if (auto* c = std::get_if<MaterialModel::ConstantImpedance>(&v)) {
    if (c->zeta.imag() != 0.0) {
      throw ModelMismatchError(
          "a constant complex impedance has no real continuation to imaginary frequencies");
    }
    return c->zeta.real();
  }
  if (std::holds_alternative<MaterialModel::TabulatedImpedance>(v)) {
    throw ModelMismatchError(
        "tabulated impedance cannot be continued to imaginary frequencies");
  }
  return 1.0 / std::sqrt(drude_epsilon(xi, *drude_params(model)));
}

complex permittivity_of(const MaterialModel& model, AngularFrequency omega) {
  if (const DrudeParams* p = drude_params(model)) return drude_epsilon(omega, *p);
  throw ModelMismatchError("material " + model.describe() +
                           " carries no permittivity for the dielectric treatment");
}

double permittivity_of(const MaterialModel& model, ImaginaryFrequency xi) {
  if (const DrudeParams* p = drude_params(model)) return drude_epsilon(xi, *p);
  throw ModelMismatchError("material " + model.describe() +
                           " carries no permittivity for the dielectric treatment");
}

PValue p_of(AngularFrequency omega, double kperp) {
  require_positive(omega.rad_s, "omega");
  if (!(kperp >= 0.0) || !std::isfinite(kperp)) {
    throw DomainError("kperp must be >= 0, got " + fmt_double(kperp));
  }
  const double u = constants::c * kperp / omega.rad_s;
  if (u <= 1.0) return PValue::propagating(std::sqrt((1.0 - u) * (1.0 + u)));
  return PValue::evanescent(std::sqrt((u - 1.0) * (u + 1.0)));
}

// ---------------------------------------------------------------------------
// Reflection coefficients

complex reflection_impedance(const PValue& pv, complex zeta, Polarization pol, double omega) {
  const complex p = pv.p;
  if (pol == Polarization::tm) {
    const complex den = p + zeta;
    if (den == complex(0.0, 0.0)) {
      throw SingularityError("TM impedance reflection: p + zeta = 0", omega, p);
    }
    return (p - zeta) / den;
  }
  const complex den = zeta * p + 1.0;
  if (den == complex(0.0, 0.0)) {
    throw SingularityError("TE impedance reflection: zeta p + 1 = 0", omega, p);
  }
  return (zeta * p - 1.0) / den;
}

complex reflection_fresnel(const PValue& pv, complex eps, Polarization pol, double omega) {
  const complex p = pv.p;
  const complex pm = upper_sqrt(eps - 1.0 + p * p);
  const complex num = pol == Polarization::te ? p - pm : eps * p - pm;
  const complex den = pol == Polarization::te ? p + pm : eps * p + pm;
  if (den == complex(0.0, 0.0)) {
    throw SingularityError(std::string("Fresnel reflection: vanishing ") + to_string(pol) +
                               " denominator",
                           omega, p);
  }
  return num / den;
}

complex reflection(const MaterialModel& model, ModelTag tag, AngularFrequency omega,
                   const PValue& p, Polarization pol) {
  if (std::holds_alternative<MaterialModel::Ideal>(model.variant())) {
    return pol == Polarization::te ? complex(-1.0, 0.0) : complex(1.0, 0.0);
  }
  if (tag == ModelTag::impedance) {
    return reflection_impedance(p, impedance_of(model, omega), pol, omega.rad_s);
  }
  return reflection_fresnel(p, permittivity_of(model, omega), pol, omega.rad_s);
}

double reflection(const MaterialModel& model, ModelTag tag, ImaginaryFrequency xi,
                  double p_tilde, Polarization pol) {
  if (std::holds_alternative<MaterialModel::Ideal>(model.variant())) {
    return pol == Polarization::te ? -1.0 : 1.0;
  }
  if (tag == ModelTag::impedance) {
    const double zeta = impedance_of(model, xi);
    return pol == Polarization::tm ? (p_tilde - zeta) / (p_tilde + zeta)
                                   : (zeta * p_tilde - 1.0) / (zeta * p_tilde + 1.0);
  }
  const double eps = permittivity_of(model, xi);
  const double pm = std::sqrt(eps - 1.0 + p_tilde * p_tilde);
  return pol == Polarization::te ? (p_tilde - pm) / (p_tilde + pm)
                                 : (eps * p_tilde - pm) / (eps * p_tilde + pm);
}

double static_reflection(const MaterialModel& model, ModelTag tag, double kperp,
                         Polarization pol) {
  require_positive(kperp, "kperp");
  const auto& v = model.variant();
  if (model.is_ideal()) return pol == Polarization::te ? -1.0 : 1.0;
  // TM: p_tilde -> infinity while zeta -> 0 (or eps -> infinity), so r_TM -> 1.
  if (pol == Polarization::tm) {
    if (tag == ModelTag::lifshitz_dielectric) (void)permittivity_of(model, ImaginaryFrequency{1.0});
    if (std::holds_alternative<MaterialModel::TabulatedImpedance>(v)) {
      throw ModelMismatchError("tabulated impedance has no static limit");
    }
    return 1.0;
  }
  if (std::holds_alternative<MaterialModel::ConstantImpedance>(v)) {
    if (tag == ModelTag::lifshitz_dielectric) {
      throw ModelMismatchError("constant impedance carries no permittivity");
    }
    return 1.0;  // zeta p_tilde -> infinity
  }
  if (std::holds_alternative<MaterialModel::TabulatedImpedance>(v)) {
    throw ModelMismatchError("tabulated impedance has no static limit");
  }
  const DrudeParams& d = *drude_params(model);
  const double ck = constants::c * kperp;
  if (tag == ModelTag::impedance) {
    if (d.relaxation_freq > 0.0) return 1.0;  // zeta ~ sqrt(xi gamma)/Omega_p, zeta p_tilde ~ xi^-1/2
    const double u = ck / d.plasma_freq;      // zeta p_tilde -> c k / Omega_p
    return (u - 1.0) / (u + 1.0);
  }
  if (d.relaxation_freq > 0.0) return 0.0;  // xi^2 eps -> 0, p_m -> p_tilde
  const double pm = std::hypot(ck, d.plasma_freq);
  return (ck - pm) / (ck + pm);
}

std::string static_limit_description(const MaterialModel& model, ModelTag tag) {
  if (model.is_ideal()) return "r_TE(0)=-1, r_TM(0)=+1 (ideal mirror)";
  const auto& v = model.variant();
  if (std::holds_alternative<MaterialModel::ConstantImpedance>(v)) {
    return "r_TE(0)=+1, r_TM(0)=+1 (constant impedance, zeta*p_tilde -> infinity)";
  }
  if (std::holds_alternative<MaterialModel::TabulatedImpedance>(v)) {
    return "undefined (tabulated impedance)";
  }
  const DrudeParams& d = *drude_params(model);
  if (tag == ModelTag::impedance) {
    return d.relaxation_freq > 0.0
               ? "r_TE(0)=+1, r_TM(0)=+1 (impedance 1/sqrt(eps_D), zeta*p_tilde -> infinity)"
               : "r_TE(0)=(ck-Omega_p)/(ck+Omega_p), r_TM(0)=+1 (impedance, lossless Drude)";
  }
  return d.relaxation_freq > 0.0
             ? "r_TE(0)=0, r_TM(0)=+1 (dielectric Drude, TE n=0 term vanishes)"
             : "r_TE(0)=(ck-sqrt(c^2k^2+Omega_p^2))/(ck+sqrt(c^2k^2+Omega_p^2)), r_TM(0)=+1 "
               "(dielectric plasma limit)";
}

}  // namespace surfimp
