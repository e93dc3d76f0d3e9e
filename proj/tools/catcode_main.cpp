// catcode: build category codebooks, encode id streams, decode ensemble
// outputs, and measure code quality (collision number, mutual information,
// average minimal KL, Hamming statistics).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "catcode/codebook.hpp"
#include "catcode/errors.hpp"
#include "catcode/inference.hpp"
#include "catcode/metrics.hpp"
#include "catcode/presets.hpp"
#include "catcode/serialize.hpp"

using json = nlohmann::ordered_json;
using namespace catcode;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParam = 2;
constexpr int kExitData = 3;
constexpr int kExitCap = 4;

int exit_code_for(const CodingError& e) {
    switch (e.code()) {
        case errc::cap_exceeded:
            return kExitCap;
        case errc::out_of_range:
        case errc::shape_mismatch:
        case errc::io_error:
            return kExitData;
        default:
            return kExitParam;
    }
}

std::vector<std::uint64_t> parse_u64_list(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoull(item));
    }
    return out;
}

std::vector<std::uint32_t> parse_u32_list(const std::string& csv) {
    std::vector<std::uint32_t> out;
    for (std::uint64_t v : parse_u64_list(csv)) out.push_back(static_cast<std::uint32_t>(v));
    return out;
}

std::vector<GaussInt> parse_gauss_list(const std::string& csv) {
    std::vector<GaussInt> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(gauss_from_string(item));
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-")
        std::cout << text;
    else
        write_text_file(out_path, text);
}

struct GenOptions {
    std::string preset;
    std::string scheme;
    std::uint64_t n = 0;
    unsigned k = 2;
    unsigned r = 0;
    std::uint64_t p = 0;
    std::string points_csv;
    std::string moduli_csv;
    std::uint32_t bits = 0;
    unsigned m = 0;
    std::uint32_t kept_bits = 0;
    std::uint64_t seed = 0;
    std::string freq_order_path;
    bool ecoc_random = false;
    bool anti = false;
    std::string out_path;
};

Codebook build_from_options(const GenOptions& o) {
    if (!o.preset.empty()) {
        Codebook cb = build_preset(o.preset);
        if (!o.freq_order_path.empty()) {
            if (cb.scheme != Scheme::coo) raise(errc::bad_parameters, "--freq-order applies to cut-off presets only");
            std::vector<std::uint32_t> order;
            for (std::uint64_t id : read_id_file(o.freq_order_path)) order.push_back(static_cast<std::uint32_t>(id));
            cb = build_coo(cb.n_classes, std::get<CooParams>(cb.params).total_bits, order);
        }
        return cb;
    }
    if (o.scheme.empty()) raise(errc::bad_parameters, "need --preset or --scheme");
    if (o.n == 0) raise(errc::bad_parameters, "need --n");
    Scheme scheme = scheme_from_name(o.scheme);
    switch (scheme) {
        case Scheme::polynomial: {
            std::optional<std::vector<std::uint32_t>> points;
            if (!o.points_csv.empty()) points = parse_u32_list(o.points_csv);
            unsigned r = o.r ? o.r : (points ? static_cast<unsigned>(points->size()) : 2);
            return build_polynomial_cc(o.n, o.k, o.p ? std::optional<std::uint64_t>(o.p) : std::nullopt, r, points);
        }
        case Scheme::remainder: {
            std::optional<std::vector<std::uint64_t>> mods;
            if (!o.moduli_csv.empty()) mods = parse_u64_list(o.moduli_csv);
            unsigned r = o.r ? o.r : (mods ? static_cast<unsigned>(mods->size()) : 2);
            return build_remainder_cc(o.n, o.k, mods, r);
        }
        case Scheme::gauss: {
            std::optional<std::vector<GaussInt>> mods;
            if (!o.moduli_csv.empty()) mods = parse_gauss_list(o.moduli_csv);
            unsigned r = o.r ? o.r : (mods ? static_cast<unsigned>(mods->size()) : 2);
            return build_gauss_cc(o.n, o.k, mods, r);
        }
        case Scheme::coo: {
            std::optional<std::vector<std::uint32_t>> order;
            if (!o.freq_order_path.empty()) {
                std::vector<std::uint32_t> v;
                for (std::uint64_t id : read_id_file(o.freq_order_path)) v.push_back(static_cast<std::uint32_t>(id));
                order = std::move(v);
            }
            if (o.bits == 0) raise(errc::bad_parameters, "coo needs --bits");
            return build_coo(o.n, o.bits, order);
        }
        case Scheme::rmp: {
            if (o.m == 0 || o.kept_bits == 0) raise(errc::bad_parameters, "rmp needs --m and --kept-bits");
            return build_rmp(o.n, o.m, o.kept_bits, o.seed);
        }
        case Scheme::ecoc: {
            if (o.bits == 0) raise(errc::bad_parameters, "ecoc needs --bits");
            return build_ecoc(o.n, o.bits, o.ecoc_random, o.seed);
        }
    }
    raise(errc::bad_parameters, "unreachable scheme");
}

int cmd_gen(const GenOptions& o) {
    Codebook cb = build_from_options(o);
    if (o.anti) cb.anti = true;

    std::string text = codebook_to_json(cb);
    emit(text, o.out_path.empty() ? "-" : o.out_path);

    std::ostringstream info;
    info << "scheme=" << scheme_name(cb.scheme) << " n_classes=" << cb.n_classes << " sites=" << cb.sites()
         << " site_sizes=[";
    for (unsigned i = 0; i < cb.sites(); ++i) info << (i ? "," : "") << cb.site_sizes[i];
    info << "] total_bits=" << cb.total_bits();
    std::string bound;
    try {
        bound = std::to_string(theoretical_min_collision(cb.n_classes, cb.site_sizes));
    } catch (const CodingError&) {
        bound = "unreachable(not injective)";
    }
    info << " min_collision_bound=" << bound;
    std::cerr << info.str() << "\n";
    return kExitOk;
}

int cmd_encode(const std::string& cb_path, const std::string& ids_path, const std::string& mode, bool anti,
               const std::string& out_path) {
    Codebook cb = load_codebook(cb_path);
    if (anti) cb.anti = true;
    std::vector<std::uint64_t> ids = ids_path.empty() ? std::vector<std::uint64_t>{} : read_id_file(ids_path);
    if (ids_path.empty()) raise(errc::bad_parameters, "need --ids FILE");

    std::ostringstream csv;
    for (std::size_t row = 0; row < ids.size(); ++row) {
        std::uint64_t id = ids[row];
        if (id >= cb.n_classes)
            raise(errc::out_of_range,
                  "line " + std::to_string(row + 1) + ": id " + std::to_string(id) + " out of range [0, " +
                      std::to_string(cb.n_classes) + ")");
        if (mode == "sites") {
            SiteTuple t = encode(cb, id);
            csv << id;
            for (std::uint32_t v : t.values) csv << "," << v;
            csv << "\n";
        } else if (mode == "rhot") {
            RHotVector v = to_rhot(cb, id);
            std::string bits(v.total_bits, '0');
            for (std::uint64_t b : v.set_bits) bits[b] = '1';
            csv << id << "," << bits << "\n";
        } else {
            raise(errc::bad_parameters, "mode must be sites or rhot");
        }
    }
    emit(csv.str(), out_path);
    return kExitOk;
}

int cmd_decode(const std::string& cb_path, const std::string& input_path, double floor, const std::string& out_path) {
    Codebook cb = load_codebook(cb_path);
    std::vector<EnsembleOutput> inputs = ensembles_from_file(input_path);
    Decoder dec(cb, floor);
    std::ostringstream out;
    for (const EnsembleOutput& e : inputs) out << dec.decode(e) << "\n";
    emit(out.str(), out_path);
    return kExitOk;
}

json collision_to_json(const CollisionReport& rep) {
    json c;
    c["mode"] = rep.exhaustive ? "exhaustive" : "sampled";
    if (!rep.exhaustive) {
        c["samples"] = rep.samples;
        c["seed"] = rep.seed;
    }
    c["max_collisions"] = rep.max_collisions;
    if (rep.bound_reachable)
        c["theoretical_bound"] = rep.theoretical_bound;
    else
        c["theoretical_bound"] = nullptr;
    if (rep.witness_pair) c["witness_pair"] = {rep.witness_pair->first, rep.witness_pair->second};
    if (!rep.exhaustive) c["note"] = "sampled mode reports a lower bound on the collision number";
    return c;
}

int cmd_metrics(const std::string& cb_path, bool do_collision, bool sampled, std::uint64_t samples,
                std::vector<unsigned> mi_sites, bool do_amkl, const std::string& amkl_mode, std::uint64_t hamming,
                bool verify_minimal, std::uint64_t seed, std::uint64_t cap, const std::string& out_path) {
    Codebook cb = load_codebook(cb_path);
    json rep;
    rep["codebook"] = cb_path;
    rep["scheme"] = scheme_name(cb.scheme);
    rep["n_classes"] = cb.n_classes;

    int rc = kExitOk;

    if (do_collision || verify_minimal) {
        CollisionMode mode;
        mode.exhaustive = !sampled;
        mode.samples = samples;
        mode.seed = seed;
        if (cap) mode.cap = cap;
        CollisionReport c = collision_number(cb, mode);
        rep["collision"] = collision_to_json(c);
        if (verify_minimal) {
            bool minimal = c.exhaustive && c.bound_reachable && c.max_collisions == c.theoretical_bound;
            rep["collision"]["minimal"] = minimal;
            if (!minimal) rc = 1;
        }
    }
    if (mi_sites.size() == 2) {
        json pair;
        pair["sites"] = {mi_sites[0], mi_sites[1]};
        pair["nats"] = mutual_information(cb, mi_sites[0], mi_sites[1], cap ? cap : 10'000'000);
        rep["mi_pairs"] = json::array({pair});
    }
    if (do_amkl) {
        AmklMode mode = AmklMode::automatic;
        if (amkl_mode == "brute") mode = AmklMode::brute_force;
        else if (amkl_mode == "shortcut") mode = AmklMode::lemma_shortcut;
        else if (amkl_mode != "auto") raise(errc::bad_parameters, "--amkl-mode must be auto|brute|shortcut");
        AmklReport a = amkl_coefficient(cb, nullptr, mode, cap ? cap : 25'000);
        json aj;
        aj["rational"] = a.coefficient.str();
        aj["value"] = a.value;
        aj["method"] = a.method;
        aj["duplicate_support_ids"] = a.duplicate_support_ids;
        rep["amkl"] = aj;
    }
    if (hamming) {
        HammingStats h = hamming_stats(cb, hamming, seed);
        json hj;
        hj["samples"] = h.samples;
        hj["seed"] = h.seed;
        hj["min"] = h.min;
        hj["mean"] = h.mean;
        hj["max"] = h.max;
        rep["hamming"] = hj;
    }
    emit(rep.dump(2) + "\n", out_path);
    return rc;
}

int cmd_simulate(const std::vector<std::string>& cb_paths, const std::string& noise_kind, double eta, double alpha,
                 std::uint64_t trials, std::uint64_t seed, const std::string& out_path) {
    NoiseModel noise;
    if (noise_kind == "delta") noise = NoiseModel::delta();
    else if (noise_kind == "symmetric") noise = NoiseModel::symmetric(eta);
    else if (noise_kind == "dirichlet") noise = NoiseModel::dirichlet(alpha, seed);
    else raise(errc::bad_parameters, "--noise must be delta|symmetric|dirichlet");

    json rows = json::array();
    for (const std::string& path : cb_paths) {
        Codebook cb = load_codebook(path);
        TrialReport t = run_trials(cb, noise, trials, seed);
        json row;
        row["codebook"] = path;
        row["scheme"] = scheme_name(cb.scheme);
        row["sites"] = cb.sites();
        row["noise"] = noise_kind;
        if (noise_kind == "symmetric") row["eta"] = eta;
        if (noise_kind == "dirichlet") row["alpha"] = alpha;
        row["trials"] = t.trials;
        row["correct"] = t.correct;
        row["accuracy"] = t.accuracy;
        row["ci95"] = {t.ci95_low, t.ci95_high};
        row["seed"] = t.seed;
        rows.push_back(row);
    }
    emit((rows.size() == 1 ? rows[0].dump(2) : rows.dump(2)) + "\n", out_path);
    return kExitOk;
}

int cmd_presets() {
    json rows = json::array();
    for (const auto& p : preset_list()) {
        json row;
        row["name"] = p.name;
        row["scheme"] = scheme_name(p.scheme);
        row["n_classes"] = p.n_classes;
        row["description"] = p.description;
        rows.push_back(row);
    }
    std::cout << rows.dump(2) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"category coding toolkit"};
    app.require_subcommand(1);

    GenOptions gen;
    CLI::App* sc_gen = app.add_subcommand("gen", "construct a codebook and write its JSON");
    sc_gen->add_option("--preset", gen.preset, "named preset (see `presets`)");
    sc_gen->add_option("--scheme", gen.scheme, "polynomial|remainder|gauss|coo|rmp|ecoc");
    sc_gen->add_option("--n", gen.n, "number of classes N");
    sc_gen->add_option("--k", gen.k, "distance budget k (default 2)");
    sc_gen->add_option("--r", gen.r, "number of sites");
    sc_gen->add_option("--p", gen.p, "prime for the polynomial scheme");
    sc_gen->add_option("--points", gen.points_csv, "evaluation points, comma separated");
    sc_gen->add_option("--moduli", gen.moduli_csv, "moduli, comma separated (Gaussian as a+bi)");
    sc_gen->add_option("--bits", gen.bits, "total bits (coo) or bit count (ecoc)");
    sc_gen->add_option("--m", gen.m, "RM(m,1) parameter");
    sc_gen->add_option("--kept-bits", gen.kept_bits, "coordinates kept after the puncture");
    sc_gen->add_option("--seed", gen.seed, "seed for the puncture / random codewords");
    sc_gen->add_option("--freq-order", gen.freq_order_path, "file of ids, most frequent first (coo)");
    sc_gen->add_flag("--ecoc-random", gen.ecoc_random, "seeded random distinct codewords instead of binary expansion");
    sc_gen->add_flag("--anti", gen.anti, "emit complemented bit vectors");
    sc_gen->add_option("-o,--out", gen.out_path, "output path (default stdout)");

    std::string enc_cb, enc_ids, enc_mode = "sites", enc_out;
    bool enc_anti = false;
    CLI::App* sc_enc = app.add_subcommand("encode", "encode a file of decimal ids to CSV");
    sc_enc->add_option("--codebook", enc_cb, "codebook JSON path")->required();
    sc_enc->add_option("--ids", enc_ids, "input file, one decimal id per line")->required();
    sc_enc->add_option("--mode", enc_mode, "sites|rhot (default sites)");
    sc_enc->add_flag("--anti", enc_anti, "complement the emitted bit strings");
    sc_enc->add_option("-o,--out", enc_out, "output path (default stdout)");

    std::string dec_cb, dec_in, dec_out;
    double dec_floor = 1e-12;
    CLI::App* sc_dec = app.add_subcommand("decode", "decode ensemble outputs to labels");
    sc_dec->add_option("--codebook", dec_cb, "codebook JSON path")->required();
    sc_dec->add_option("--input", dec_in, "ensemble JSON (object or array of objects)")->required();
    sc_dec->add_option("--floor", dec_floor, "probability floor (default 1e-12)");
    sc_dec->add_option("-o,--out", dec_out, "output path (default stdout)");

    std::string met_cb, met_amkl_mode = "auto", met_out;
    bool met_collision = false, met_sampled = false, met_amkl = false, met_verify = false;
    std::uint64_t met_samples = 1'000'000, met_hamming = 0, met_seed = 0, met_cap = 0;
    std::vector<unsigned> met_mi;
    CLI::App* sc_met = app.add_subcommand("metrics", "collision / MI / AMKL / Hamming report");
    sc_met->add_option("--codebook", met_cb, "codebook JSON path")->required();
    sc_met->add_flag("--collision", met_collision, "collision number");
    sc_met->add_flag("--sampled", met_sampled, "sampled pair scan (lower bound) instead of exhaustive");
    sc_met->add_option("--samples", met_samples, "sampled pair count (default 1e6)");
    sc_met->add_option("--mi", met_mi, "two site indices for exact mutual information")->expected(2);
    sc_met->add_flag("--amkl", met_amkl, "average minimal KL coefficient");
    sc_met->add_option("--amkl-mode", met_amkl_mode, "auto|brute|shortcut (default auto)");
    sc_met->add_option("--hamming", met_hamming, "sample count for Hamming statistics");
    sc_met->add_flag("--verify-minimal", met_verify, "exit nonzero unless exhaustive C(f) equals the bound");
    sc_met->add_option("--seed", met_seed, "seed for sampled modes");
    sc_met->add_option("--cap", met_cap, "override the exhaustive/MI/AMKL caps");
    sc_met->add_option("-o,--out", met_out, "output path (default stdout)");

    std::vector<std::string> sim_cbs;
    std::string sim_noise = "delta", sim_out;
    double sim_eta = 0.0, sim_alpha = 1.0;
    std::uint64_t sim_trials = 10'000, sim_seed = 0;
    CLI::App* sc_sim = app.add_subcommand("simulate", "simulated base learners -> decoder accuracy");
    sc_sim->add_option("--codebook", sim_cbs, "codebook JSON path (repeatable for comparison)")->required();
    sc_sim->add_option("--noise", sim_noise, "delta|symmetric|dirichlet");
    sc_sim->add_option("--eta", sim_eta, "symmetric noise level");
    sc_sim->add_option("--alpha", sim_alpha, "dirichlet concentration");
    sc_sim->add_option("--trials", sim_trials, "number of trials (default 1e4)");
    sc_sim->add_option("--seed", sim_seed, "trial seed");
    sc_sim->add_option("-o,--out", sim_out, "output path (default stdout)");

    CLI::App* sc_pre = app.add_subcommand("presets", "list named presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitParam;
    }

    try {
        if (sc_gen->parsed()) return cmd_gen(gen);
        if (sc_enc->parsed()) return cmd_encode(enc_cb, enc_ids, enc_mode, enc_anti, enc_out);
        if (sc_dec->parsed()) return cmd_decode(dec_cb, dec_in, dec_floor, dec_out);
        if (sc_met->parsed())
            return cmd_metrics(met_cb, met_collision, met_sampled, met_samples, met_mi, met_amkl, met_amkl_mode,
                               met_hamming, met_verify, met_seed, met_cap, met_out);
        if (sc_sim->parsed()) return cmd_simulate(sim_cbs, sim_noise, sim_eta, sim_alpha, sim_trials, sim_seed, sim_out);
        if (sc_pre->parsed()) return cmd_presets();
    } catch (const CodingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParam;
    }
    return kExitOk;
}
