#include "fsm_jacobi/io.hpp"

#include "fsm_jacobi/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fsm_jacobi::io {

namespace {

json complex_to_json(Cplx z) { return json::array({z.real(), z.imag()}); }

Cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError("complex values must be two-element [re, im] arrays");
    const Cplx z(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw ConfigError("complex value must be finite");
    return z;
}

json triple_to_json(const Triple& t) {
    return json{{"u", complex_to_json(t.u)}, {"v", complex_to_json(t.v)},
                {"w", complex_to_json(t.w)}};
}

Triple triple_from_json(const json& j) {
    return Triple{complex_from_json(j.at("u")), complex_from_json(j.at("v")),
                  complex_from_json(j.at("w"))};
}

const char* law_name(SampleLaw law) {
    return law == SampleLaw::ArcsineEndpoints ? "arcsine" : "uniform";
}

SampleLaw law_from_name(const std::string& name) {
    if (name == "uniform") return SampleLaw::Uniform;
    if (name == "arcsine") return SampleLaw::ArcsineEndpoints;
    throw ConfigError("unknown sampling law: " + name);
}

} // namespace

std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string format_complex(Cplx z) {
    std::string s = format_g17(z.real());
    if (z.imag() != 0.0) {
        s += (z.imag() >= 0.0 || std::isnan(z.imag())) ? "+" : "";
        s += format_g17(z.imag());
        s += "i";
    }
    return s;
}

Cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ConfigError("empty complex literal");

    const auto to_double = [&text](const std::string& t) {
        std::size_t pos = 0;
        double x = 0.0;
        try {
            x = std::stod(t, &pos);
        } catch (const std::exception&) {
            throw ConfigError("malformed complex literal: " + text);
        }
        if (pos != t.size()) throw ConfigError("malformed complex literal: " + text);
        return x;
    };

    if (s.back() == 'i' || s.back() == 'I' || s.back() == 'j') {
        s.pop_back();
        // find the split between real and imaginary parts
        std::size_t split = std::string::npos;
        for (std::size_t k = s.size(); k-- > 1;) {
            if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        const auto imag_part = [&](const std::string& t) {
            if (t.empty() || t == "+") return 1.0;
            if (t == "-") return -1.0;
            return to_double(t);
        };
        if (split == std::string::npos) return Cplx(0.0, imag_part(s));
        return Cplx(to_double(s.substr(0, split)), imag_part(s.substr(split)));
    }
    return Cplx(to_double(s), 0.0);
}

Triple parse_triple(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    int depth = 0;
    for (char c : text) {
        if (c == ',' && depth == 0) {
            parts.push_back(current);
            current.clear();
        } else {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            current += c;
        }
    }
    parts.push_back(current);
    if (parts.size() != 3) throw ConfigError("target must be 'u,v,w'");
    return Triple{parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2])};
}

json symbol_set_to_json(const SymbolSet& set) {
    json j;
    if (const auto* fp = std::get_if<SymbolSet::FinitePoints>(&set.variant())) {
        j["kind"] = "points";
        json pts = json::array();
        for (Cplx p : fp->points) pts.push_back(complex_to_json(p));
        j["points"] = pts;
    } else if (const auto* iv = std::get_if<SymbolSet::RealInterval>(&set.variant())) {
        j["kind"] = "interval";
        j["lo"] = iv->lo;
        j["hi"] = iv->hi;
        j["samples"] = set.sample_count();
    } else {
        const auto& ca = std::get<SymbolSet::CircleArc>(set.variant());
        j["kind"] = "circle";
        j["radius"] = ca.radius;
        j["angle_lo"] = ca.angle_lo;
        j["angle_hi"] = ca.angle_hi;
        j["samples"] = set.sample_count();
    }
    return j;
}

SymbolSet symbol_set_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const int samples = j.value("samples", kDefaultSampleCount);
    if (kind == "points") {
        std::vector<Cplx> pts;
        for (const auto& p : j.at("points")) pts.push_back(complex_from_json(p));
        return SymbolSet::points(std::move(pts));
    }
    if (kind == "interval")
        return SymbolSet::interval(j.at("lo").get<double>(), j.at("hi").get<double>(), samples);
    if (kind == "circle") {
        const double radius = j.at("radius").get<double>();
        if (j.contains("angle_lo") || j.contains("angle_hi"))
            return SymbolSet::arc(radius, j.at("angle_lo").get<double>(),
                                  j.at("angle_hi").get<double>(), samples);
        return SymbolSet::circle(radius, samples);
    }
    throw ConfigError("unknown set kind: " + kind);
}

json sets_to_json(const TriSymbolSet& sets) {
    return json{{"U", symbol_set_to_json(sets.U)},
                {"V", symbol_set_to_json(sets.V)},
                {"W", symbol_set_to_json(sets.W)}};
}

TriSymbolSet load_sets(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sets file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("malformed sets file " + path.string() + ": " + e.what());
    }
    try {
        return make_tri_symbol_set(symbol_set_from_json(j.at("U")),
                                   symbol_set_from_json(j.at("V")),
                                   symbol_set_from_json(j.at("W")));
    } catch (const json::exception& e) {
        throw ConfigError("sets file " + path.string() + " misses a field: " + e.what());
    }
}

void save_field(const DiagonalField& field, const std::filesystem::path& path) {
    std::ostringstream out;
    json header;
    header["lo"] = field.lo();
    header["hi"] = field.hi();
    header["orientation"] =
        field.orientation() == FieldOrientation::BiInfinite ? "bi" : "semi";
    if (const auto* we = std::get_if<DiagonalField::WordEnumerationGen>(&field.generator())) {
        json alphabet = json::array();
        for (const Triple& t : we->alphabet) alphabet.push_back(triple_to_json(t));
        header["generator"] = json{{"type", "words"}, {"alphabet", alphabet}};
    } else if (const auto* iid = std::get_if<DiagonalField::IidGen>(&field.generator())) {
        header["generator"] = json{{"type", "iid"},
                                   {"seed", iid->seed},
                                   {"laws", json::array({law_name(iid->laws[0]),
                                                         law_name(iid->laws[1]),
                                                         law_name(iid->laws[2])})},
                                   {"sets", sets_to_json(*iid->sets)}};
    } else {
        header["generator"] = json{{"type", "explicit"}};
    }
    out << header.dump() << '\n';
    for (Index i = field.lo(); i <= field.hi(); ++i) {
        const Triple& t = field.at(i);
        json rec = triple_to_json(t);
        rec["i"] = i;
        out << rec.dump() << '\n';
    }
    atomic_write(path, out.str());
}

DiagonalField load_field(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open field file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("field file is empty: " + path.string());

    json header;
    try {
        header = json::parse(line);
    } catch (const json::exception& e) {
        throw ConfigError("malformed field header: " + std::string(e.what()));
    }
    const Index lo = header.at("lo").get<Index>();
    const Index hi = header.at("hi").get<Index>();
    const FieldOrientation orientation = header.at("orientation").get<std::string>() == "semi"
                                             ? FieldOrientation::SemiInfinite
                                             : FieldOrientation::BiInfinite;
    const json& gen = header.at("generator");
    const std::string type = gen.at("type").get<std::string>();

    std::vector<Triple> records;
    records.reserve(static_cast<std::size_t>(hi - lo + 1));
    Index expect = lo;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception& e) {
            throw ConfigError("malformed field record at line " + std::to_string(line_no) + ": " +
                              e.what());
        }
        if (rec.at("i").get<Index>() != expect)
            throw ConfigError("field records out of order at line " + std::to_string(line_no));
        records.push_back(triple_from_json(rec));
        ++expect;
    }
    if (expect != hi + 1) throw ConfigError("field file is truncated: " + path.string());

    if (type == "explicit") return DiagonalField::explicit_field(lo, std::move(records), orientation);

    DiagonalField field = [&] {
        if (type == "words") {
            std::vector<Triple> alphabet;
            for (const auto& a : gen.at("alphabet")) alphabet.push_back(triple_from_json(a));
            return DiagonalField::word_enumeration(std::move(alphabet), lo, hi, orientation);
        }
        if (type != "iid") throw ConfigError("unknown generator type: " + type);
        const TriSymbolSet sets =
            make_tri_symbol_set(symbol_set_from_json(gen.at("sets").at("U")),
                                symbol_set_from_json(gen.at("sets").at("V")),
                                symbol_set_from_json(gen.at("sets").at("W")));
        const auto& laws = gen.at("laws");
        return DiagonalField::sample_iid(sets, gen.at("seed").get<std::uint64_t>(), lo, hi,
                                         orientation,
                                         {law_from_name(laws.at(0).get<std::string>()),
                                          law_from_name(laws.at(1).get<std::string>()),
                                          law_from_name(laws.at(2).get<std::string>())});
    }();

    // regenerated entries must agree bit-exactly with the dumped records
    for (Index i = lo; i <= hi; ++i) {
        if (!(field.at(i) == records[static_cast<std::size_t>(i - lo)]))
            throw ConfigError("field file does not match its generator at index " +
                              std::to_string(i));
    }
    return field;
}

std::map<Index, Cplx> load_rhs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open rhs file: " + path.string());
    std::map<Index, Cplx> rhs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const json rec = json::parse(line);
            rhs[rec.at("i").get<Index>()] = complex_from_json(rec.at("b"));
        } catch (const json::exception& e) {
            throw ConfigError("malformed rhs record at line " + std::to_string(line_no) + ": " +
                              e.what());
        }
    }
    return rhs;
}

void write_cloud_csv(std::span<const Cplx> cloud, const std::filesystem::path& path,
                     bool real_only) {
    std::ostringstream out;
    out << (real_only ? "value\n" : "re,im\n");
    for (const Cplx& z : cloud) {
        if (real_only)
            out << format_g17(z.real()) << '\n';
        else
            out << format_g17(z.real()) << ',' << format_g17(z.imag()) << '\n';
    }
    atomic_write(path, out.str());
}

void write_report_csv(const SolveReport& report, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "n,l_n,r_n,size,inv_norm,residual,delta\n";
    for (const SolveRecord& rec : report.records) {
        out << rec.n << ',' << rec.l << ',' << rec.r << ',' << rec.size << ',';
        if (rec.inverse_norm)
            out << format_g17(*rec.inverse_norm);
        else
            out << "skipped";
        out << ',' << format_g17(rec.residual_inf) << ',';
        if (rec.componentwise_delta) out << format_g17(*rec.componentwise_delta);
        out << '\n';
    }
    atomic_write(path, out.str());
}

json report_to_json(const SolveReport& report) {
    json entries = json::array();
    for (const SolveRecord& rec : report.records) {
        json e{{"n", rec.n},          {"l", rec.l},
               {"r", rec.r},          {"size", rec.size},
               {"residual", rec.residual_inf}, {"singular", rec.singular}};
        if (rec.inverse_norm) e["inverse_norm"] = *rec.inverse_norm;
        if (rec.componentwise_delta) e["delta"] = *rec.componentwise_delta;
        entries.push_back(std::move(e));
    }
    return json{{"case", to_string(report.kase)},
                {"shift_k", report.shift_k},
                {"target", triple_to_json(report.plan.target)},
                {"table", entries}};
}

void write_system_csv(const BandedSystem& sys, const std::filesystem::path& csv_path,
                      const std::filesystem::path& header_path) {
    std::ostringstream out;
    out << "sub,main,super\n";
    for (Index i = sys.l(); i <= sys.r(); ++i) {
        out << format_complex(sys.band_u(i)) << ',' << format_complex(sys.band_v(i)) << ','
            << format_complex(sys.band_w(i)) << '\n';
    }
    atomic_write(csv_path, out.str());
    const json header{{"l", sys.l()}, {"r", sys.r()}, {"shift_k", sys.shift()}};
    atomic_write(header_path, header.dump(2) + "\n");
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write file: " + tmp.string());
        out << content;
        if (!out) throw ConfigError("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace fsm_jacobi::io
