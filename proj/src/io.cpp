#include "qst/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qst/errors.hpp"

namespace qst::io {

namespace {

template <typename T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw StructuralError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw StructuralError(std::string("field '") + key + "': " + e.what());
    }
}

template <typename T>
void optional_field(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw StructuralError(std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace

json to_json(const ChainSpec& spec) {
    return {{"n", spec.size()},
            {"onsite", spec.onsite()},
            {"couplings", spec.couplings()},
            {"sign_convention", std::string(to_string(spec.sign_convention()))}};
}

ChainSpec chain_from_json(const json& j) {
    const auto onsite = field<std::vector<double>>(j, "onsite");
    const auto couplings = field<std::vector<double>>(j, "couplings");
    SignConvention sign = SignConvention::negative_offdiag;
    if (j.contains("sign_convention")) sign = sign_convention_from_string(field<std::string>(j, "sign_convention"));
    if (j.contains("n") && field<std::size_t>(j, "n") != onsite.size()) {
        throw StructuralError("'n' disagrees with the number of on-site energies");
    }
    return ChainSpec(onsite, couplings, sign);
}

json to_json(const Spectrum& s) {
    json j;
    j["values"] = std::vector<double>(s.values().data(), s.values().data() + s.size());
    j["p"] = s.p ? json(*s.p) : json(nullptr);
    j["t_m"] = s.t_m ? json(*s.t_m) : json(nullptr);
    return j;
}

Spectrum spectrum_from_json(const json& j) {
    Spectrum s(field<std::vector<double>>(j, "values"));
    if (j.contains("p") && !j.at("p").is_null()) s.p = field<int>(j, "p");
    if (j.contains("t_m") && !j.at("t_m").is_null()) s.t_m = field<double>(j, "t_m");
    return s;
}

json to_json(const GAConfig& c) {
    return {{"n", c.n},
            {"p", c.p},
            {"generations", c.generations},
            {"population", c.population},
            {"mu_initial", c.mu_initial},
            {"mu_final", c.mu_final},
            {"window", c.window},
            {"A", c.weight_fidelity},
            {"B", c.weight_spectral},
            {"seed", c.seed},
            {"onsite_min", c.onsite_min},
            {"onsite_max", c.onsite_max},
            {"coupling", c.coupling},
            {"mutation_width", c.mutation_width},
            {"parabolic_seed", c.parabolic_seed}};
}

GAConfig ga_config_from_json(const json& j) {
    if (!j.is_object()) throw StructuralError("GA config must be a JSON object");
    const json known = to_json(GAConfig{});
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) throw StructuralError("unknown GA config field '" + key + "'");
    }
    GAConfig c;
    optional_field(j, "n", c.n);
    optional_field(j, "p", c.p);
    optional_field(j, "generations", c.generations);
    optional_field(j, "population", c.population);
    optional_field(j, "mu_initial", c.mu_initial);
    optional_field(j, "mu_final", c.mu_final);
    optional_field(j, "window", c.window);
    optional_field(j, "A", c.weight_fidelity);
    optional_field(j, "B", c.weight_spectral);
    optional_field(j, "seed", c.seed);
    optional_field(j, "onsite_min", c.onsite_min);
    optional_field(j, "onsite_max", c.onsite_max);
    optional_field(j, "coupling", c.coupling);
    optional_field(j, "mutation_width", c.mutation_width);
    optional_field(j, "parabolic_seed", c.parabolic_seed);
    c.validate();
    return c;
}

void write_trace_csv(std::ostream& os, const FidelityTrace& tr, bool raw_time) {
    os << (raw_time ? "t" : "t_Jmax") << ",F,Fav\n" << std::setprecision(12);
    const double scale = raw_time ? 1.0 / tr.j_max : 1.0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        os << tr.times[i] * scale << ',' << tr.transfer[i] << ',' << tr.average[i] << '\n';
    }
}

json peaks_json(const FidelityTrace& tr, bool raw_time) {
    json arr = json::array();
    const double scale = raw_time ? 1.0 / tr.j_max : 1.0;
    for (const auto& p : tr.peaks) arr.push_back({{"t", p.time * scale}, {"F", p.fidelity}});
    return {{"peaks", arr}};
}

void write_history_csv(std::ostream& os, const std::vector<GenerationRecord>& history) {
    os << "generation,best_f,best_Fmax,best_Q,best_sigma\n" << std::setprecision(12);
    for (const auto& r : history) {
        os << r.generation << ',' << r.best_f << ',' << r.best_fmax << ',' << r.best_q << ',' << r.best_sigma << '\n';
    }
}

json to_json(const AnalogueDiagnostics& d) {
    return {{"nodes", d.nodes},
            {"ladder_residual", d.ladder_residual},
            {"commutator_residual", d.commutator_residual},
            {"x_pairs", d.x_pairs},
            {"zero_mode", d.zero_mode}};
}

json to_json(const RunManifest& m) {
    return {{"subcommand", m.subcommand},
            {"inputs", m.inputs},
            {"parameters", m.parameters},
            {"seed", m.seed ? json(*m.seed) : json(nullptr)},
            {"output_dir", m.output_dir},
            {"tool_version", m.tool_version},
            {"argv", m.argv}};
}

RunManifest manifest_from_json(const json& j) {
    RunManifest m;
    m.subcommand = field<std::string>(j, "subcommand");
    m.argv = field<std::vector<std::string>>(j, "argv");
    optional_field(j, "inputs", m.inputs);
    if (j.contains("parameters")) m.parameters = j.at("parameters");
    if (j.contains("seed") && !j.at("seed").is_null()) m.seed = field<std::uint64_t>(j, "seed");
    optional_field(j, "output_dir", m.output_dir);
    optional_field(j, "tool_version", m.tool_version);
    return m;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw StructuralError("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StructuralError("cannot write '" + path.string() + "'");
    out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace qst::io
