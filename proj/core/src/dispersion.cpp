#include "dppln/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dppln/errors.hpp"

namespace dppln {

std::string_view to_string(Polarization p) noexcept {
    return p == Polarization::ordinary ? "ordinary" : "extraordinary";
}

Polarization parse_polarization(std::string_view text) {
    if (text == "o" || text == "ordinary") return Polarization::ordinary;
    if (text == "e" || text == "extraordinary") return Polarization::extraordinary;
    throw InvalidInput("unknown polarization '" + std::string(text) + "'");
}

namespace dispersion {

SellmeierSet::SellmeierSet(Polarization polarization, std::array<double, 4> coefficients,
                           TemperatureModel temperature_model, Domain domain)
    : polarization_(polarization),
      coefficients_(coefficients),
      temperature_model_(temperature_model),
      domain_(domain) {
    if (!(domain_.wavelength_min_nm > 0.0 && domain_.wavelength_min_nm < domain_.wavelength_max_nm &&
          domain_.temperature_min_c < domain_.temperature_max_c)) {
        throw InvalidInput("Sellmeier set has an empty validated domain");
    }
}

double SellmeierSet::evaluate(double wavelength_nm, double temperature_c) const noexcept {
    const auto& [a1, a2, a3, a4] = coefficients_;
    const auto& [b1, b2, b3] = temperature_model_.coefficients;
    const double t0 = temperature_model_.reference_c;
    const double f = (temperature_c - t0) * (temperature_c + t0 + temperature_model_.offset_c);
    const double lam = wavelength_nm * 1e-3;
    const double lam2 = lam * lam;
    const double pole = a3 + b2 * f;
    const double n2 = a1 + (a2 + b1 * f) / (lam2 - pole * pole) + b3 * f - a4 * lam2;
    return std::sqrt(n2);
}

double bulk_index(const SellmeierSet& set, double wavelength_nm, double temperature_c) {
    const Domain& d = set.domain();
    if (!(wavelength_nm >= d.wavelength_min_nm && wavelength_nm <= d.wavelength_max_nm)) {
        std::ostringstream msg;
        msg << "wavelength " << wavelength_nm << " nm outside Sellmeier domain ["
            << d.wavelength_min_nm << ", " << d.wavelength_max_nm << "] nm";
        throw OutOfRange(msg.str());
    }
    if (!(temperature_c >= d.temperature_min_c && temperature_c <= d.temperature_max_c)) {
        std::ostringstream msg;
        msg << "temperature " << temperature_c << " C outside Sellmeier domain ["
            << d.temperature_min_c << ", " << d.temperature_max_c << "] C";
        throw OutOfRange(msg.str());
    }
    return set.evaluate(wavelength_nm, temperature_c);
}

namespace {

template <std::size_t N>
std::array<double, N> fixed_array(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != N) {
        throw InvalidInput(std::string("Sellmeier file: '") + what + "' must have " +
                           std::to_string(N) + " entries");
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = j.at(i).get<double>();
    return out;
}

}  // namespace

SellmeierPair parse_sellmeier_json(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("Sellmeier file: ") + e.what());
    }
    try {
        if (doc.value("form", std::string{}) != "edwards-lawrence") {
            throw InvalidInput("Sellmeier file: unsupported form (expected \"edwards-lawrence\")");
        }
        Domain domain;
        if (doc.contains("domain")) {
            auto wl = fixed_array<2>(doc["domain"].at("wavelength_nm"), "domain.wavelength_nm");
            auto tc = fixed_array<2>(doc["domain"].at("temperature_c"), "domain.temperature_c");
            domain = {wl[0], wl[1], tc[0], tc[1]};
        }
        std::vector<SellmeierSet> found;
        for (const auto& s : doc.at("sets")) {
            const auto pol = parse_polarization(s.at("polarization").get<std::string>());
            TemperatureModel tm;
            const auto& t = s.at("temperature_model");
            tm.reference_c = t.at("reference_c").get<double>();
            tm.offset_c = t.at("offset_c").get<double>();
            tm.coefficients = fixed_array<3>(t.at("coefficients"), "temperature_model.coefficients");
            found.emplace_back(pol, fixed_array<4>(s.at("coefficients"), "coefficients"), tm, domain);
        }
        auto pick = [&](Polarization p) -> const SellmeierSet& {
            auto it = std::find_if(found.begin(), found.end(),
                                   [p](const SellmeierSet& s) { return s.polarization() == p; });
            if (it == found.end()) {
                throw InvalidInput("Sellmeier file: missing " + std::string(to_string(p)) + " set");
            }
            return *it;
        };
        SellmeierPair pair{doc.value("source", std::string{}), pick(Polarization::ordinary),
                           pick(Polarization::extraordinary)};

        // Negative uniaxial and n > 1 across the domain corners and midpoint.
        for (double lam : {domain.wavelength_min_nm, 0.5 * (domain.wavelength_min_nm + domain.wavelength_max_nm),
                           domain.wavelength_max_nm}) {
            for (double tc : {domain.temperature_min_c, domain.temperature_max_c}) {
                const double no = pair.ordinary.evaluate(lam, tc);
                const double ne = pair.extraordinary.evaluate(lam, tc);
                if (!(ne > 1.0) || !(no > ne)) {
                    throw InvalidInput("Sellmeier file: indices violate n_o > n_e > 1 inside the domain");
                }
            }
        }
        return pair;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("Sellmeier file: ") + e.what());
    }
}

SellmeierPair load_sellmeier_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open Sellmeier file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_sellmeier_json(text.str());
}

const SellmeierPair& builtin_lithium_niobate() {
    static const SellmeierPair pair = parse_sellmeier_json(builtin_lithium_niobate_json());
    return pair;
}

IndexIncrementTable::IndexIncrementTable(std::vector<IndexIncrement> entries,
                                         double extrapolation_margin_nm)
    : entries_(std::move(entries)), margin_nm_(extrapolation_margin_nm) {
    if (entries_.size() < 2) throw InvalidInput("index increment table needs at least two rows");
    if (!(margin_nm_ >= 0.0)) throw InvalidInput("extrapolation margin must be >= 0");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        for (double dn : {e.dn_ordinary, e.dn_extraordinary}) {
            // dn == 0 is accepted so that an unguided configuration reaches the solver.
            if (!(dn >= 0.0 && dn < 0.01)) {
                throw InvalidInput("index increment " + std::to_string(dn) + " outside [0, 0.01)");
            }
        }
        if (i > 0 && !(e.wavelength_nm > entries_[i - 1].wavelength_nm)) {
            throw InvalidInput("index increment wavelengths must be strictly increasing");
        }
    }
}

IndexIncrementTable IndexIncrementTable::reference() {
    return IndexIncrementTable({{519.0, 0.0038, 0.0037}, {780.0, 0.0034, 0.0030}, {1550.0, 0.0025, 0.0025}});
}

double index_increment(const IndexIncrementTable& table, Polarization polarization,
                       double wavelength_nm) {
    const auto rows = table.entries();
    const double lo = rows.front().wavelength_nm;
    const double hi = rows.back().wavelength_nm;
    const double margin = table.extrapolation_margin_nm();
    if (!(wavelength_nm >= lo - margin && wavelength_nm <= hi + margin)) {
        std::ostringstream msg;
        msg << "wavelength " << wavelength_nm << " nm outside index increment table span [" << lo
            << ", " << hi << "] nm (margin " << margin << " nm)";
        throw OutOfRange(msg.str());
    }
    auto value = [polarization](const IndexIncrement& e) {
        return polarization == Polarization::ordinary ? e.dn_ordinary : e.dn_extraordinary;
    };
    // Segment containing lambda; end segments extend linearly.
    auto upper = std::upper_bound(rows.begin(), rows.end(), wavelength_nm,
                                  [](double w, const IndexIncrement& e) { return w < e.wavelength_nm; });
    std::size_t i = static_cast<std::size_t>(upper - rows.begin());
    i = std::clamp<std::size_t>(i, 1, rows.size() - 1);
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    if (wavelength_nm == a.wavelength_nm) return value(a);
    if (wavelength_nm == b.wavelength_nm) return value(b);
    const double t = (wavelength_nm - a.wavelength_nm) / (b.wavelength_nm - a.wavelength_nm);
    return value(a) + t * (value(b) - value(a));
}

void WaveguideGeometry::validate() const {
    if (!(width_um > 0.0) || !(depth_um > 0.0)) {
        throw InvalidInput("waveguide width and depth must be positive");
    }
    if (!(cover_index >= 1.0)) throw InvalidInput("cover index must be >= 1");
}

double index_profile(const WaveguideGeometry& geom, double n_bulk, double dn, double y_um,
                     double z_um) noexcept {
    if (z_um >= 0.0) return geom.cover_index * geom.cover_index;
    const double gy = y_um / geom.width_um;
    const double gz = z_um / geom.depth_um;
    return n_bulk * n_bulk + 2.0 * n_bulk * dn * std::exp(-gy * gy) * std::exp(-gz * gz);
}

}  // namespace dispersion
}  // namespace dppln
