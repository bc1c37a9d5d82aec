#pragma once

// Command-line front end. run_cli() is the whole program minus main(), so it
// can be driven in-process with captured streams.

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include "cyberterrain/config.hpp"
#include "cyberterrain/dot.hpp"
#include "cyberterrain/eval.hpp"
#include "cyberterrain/graph_io.hpp"
#include "cyberterrain/io.hpp"
#include "cyberterrain/mdp_io.hpp"
#include "cyberterrain/report.hpp"

namespace cyberterrain {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitParseOrIo = 2;

inline constexpr const char* kManifestName = "manifest";
inline constexpr const char* kIncompleteMarker = "INCOMPLETE";

/// Lowercase hex SHA-256 of `data`.
inline std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 digest failed");
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        out += buf;
    }
    return out;
}

namespace cli {

/// Raw flag values before they are merged into a config.
struct TerrainFlags {
    std::string mode;
    std::optional<double> w;
    std::string protocol;
};

inline Protocol parse_protocol_token(const std::string& token) {
    auto p = protocol_from_token(token);
    if (!p) throw ParseError("unknown protocol '" + token + "' (expected ftp, smtp, http or ssh)");
    return *p;
}

inline std::set<Protocol> parse_protocol_list(const std::string& list) {
    std::set<Protocol> out;
    std::stringstream ss(list);
    std::string token;
    while (std::getline(ss, token, ','))
        if (!token.empty() && !out.insert(parse_protocol_token(token)).second)
            throw ParseError("protocol '" + token + "' listed twice");
    return out;
}

/// Single terrain config from flags (vanilla when --mode is absent).
inline TerrainConfig terrain_from_flags(const TerrainFlags& f) {
    TerrainConfig c;
    if (!f.mode.empty()) {
        auto m = terrain_mode_from_token(f.mode);
        if (!m) throw ParseError("unknown terrain mode '" + f.mode + "' (expected vanilla, reward or state)");
        c.mode = *m;
    }
    if (f.w) c.w = *f.w;
    if (!f.protocol.empty()) c.restrict_protocol = parse_protocol_token(f.protocol);
    check_terrain_config(c);
    return c;
}

inline AttackGraph load_graph(const std::string& path, std::ostream& err) {
    std::vector<std::string> warnings;
    auto g = parse_attack_graph(read_text_file(path), &warnings);
    for (const auto& w : warnings) err << "warning: " << w << "\n";
    return g;
}

inline AttackGraph materialize_input(const RunConfig& cfg, std::ostream& err) {
    if (const auto* path = std::get_if<std::string>(&cfg.input)) return load_graph(*path, err);
    if (const auto* params = std::get_if<TopologyParams>(&cfg.input)) return generate(*params);
    const auto& g = std::get<GauntletInput>(cfg.input);
    return plant_gauntlet(g.params, g.blocked, g.shape);
}

/// --seed reseeds both training and any generated input.
inline void apply_seed(RunConfig& cfg, std::uint64_t seed) {
    cfg.train.seed = seed;
    if (auto* params = std::get_if<TopologyParams>(&cfg.input)) params->seed = seed;
    if (auto* g = std::get_if<GauntletInput>(&cfg.input)) g->params.seed = seed;
}

/// Flags override config keys: --mode replaces the variant list with one
/// entry, a lone --w or --protocol adjusts every terrain entry.
inline void apply_terrain_flags(RunConfig& cfg, const TerrainFlags& f) {
    if (!f.mode.empty()) {
        cfg.terrain = {terrain_from_flags(f)};
        return;
    }
    for (auto& t : cfg.terrain) {
        if (f.w) t.w = *f.w;
        if (!f.protocol.empty() && t.mode != TerrainMode::Vanilla) t.restrict_protocol = parse_protocol_token(f.protocol);
    }
}

inline void write_artifact(const std::filesystem::path& dir, const std::string& name, const std::string& content,
                           std::map<std::string, std::string>& checksums) {
    write_text_file((dir / name).string(), content);
    checksums[name] = sha256_hex(content);
}

inline void check_unique_labels(const std::vector<TerrainConfig>& cfgs) {
    std::set<std::string> seen;
    for (const auto& c : cfgs)
        if (!seen.insert(variant_label(c)).second)
            throw DomainError("terrain variants must have distinct labels; '" + variant_label(c) + "' appears twice");
}

/// Runs a full comparison and writes every artifact plus the manifest.
/// All files are written by the calling thread after the workers finish.
inline void run_compare(const RunConfig& cfg, std::size_t jobs, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    if (cfg.output_dir.empty()) throw IoError("compare needs an output directory (--out or output_dir)");
    const fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    write_text_file((dir / kIncompleteMarker).string(), "compare run started; outputs may be partial\n");
    if (cfg.terrain.empty()) throw DomainError("compare needs at least one terrain variant");
    check_unique_labels(cfg.terrain);

    const AttackGraph graph = materialize_input(cfg, err);
    const MetricsReport report = compare_variants(graph, cfg.terrain, cfg.train, jobs);

    std::vector<std::pair<TerrainMode, std::vector<VariantResult>>> sweeps;
    if (cfg.protocols) {
        std::vector<TerrainMode> modes;
        for (const auto& t : cfg.terrain)
            if (t.mode != TerrainMode::Vanilla && std::find(modes.begin(), modes.end(), t.mode) == modes.end())
                modes.push_back(t.mode);
        if (modes.empty()) throw DomainError("--protocols needs at least one reward or state variant");
        for (TerrainMode m : modes) {
            double w = kDefaultPenaltyWeight;
            for (const auto& t : cfg.terrain)
                if (t.mode == m) {
                    w = t.w;
                    break;
                }
            sweeps.emplace_back(m, protocol_sweep(graph, m, w, cfg.train, jobs));
        }
    }

    std::map<std::string, std::string> checksums;
    write_artifact(dir, "graph.json", serialize_attack_graph(graph), checksums);
    write_artifact(dir, "summary.csv", summary_csv(report), checksums);
    write_artifact(dir, "paths.csv", paths_csv(report), checksums);
    for (const auto& v : report.variants) {
        write_artifact(dir, "curve_" + v.label + ".csv", curve_csv(v.curve), checksums);
        write_artifact(dir, "path_" + v.label + ".dot", export_dot(graph, v.simple_path), checksums);
    }
    if (!sweeps.empty()) {
        MetricsReport sweep_report;
        for (auto& [mode, results] : sweeps)
            for (auto& v : results) {
                write_artifact(dir, "curve_" + v.label + ".csv", curve_csv(v.curve), checksums);
                sweep_report.variants.push_back(v);
            }
        write_artifact(dir, "protocols.csv", summary_csv(sweep_report), checksums);
    }

    auto manifest = to_json(cfg);
    manifest["rng_version"] = kRngVersion;
    manifest["artifacts"] = detail::Json::object();
    for (const auto& [name, sum] : checksums) manifest["artifacts"][name] = "sha256:" + sum;
    write_text_file((dir / kManifestName).string(), manifest.dump(2) + "\n");
    fs::remove(dir / kIncompleteMarker, ec);

    out << summary_csv(report);
}

inline int report_error(std::ostream& err, const std::exception& e, int code) {
    err << "error: " << e.what() << "\n";
    return code;
}

}  // namespace cli

/// Entry point shared by the executable and the tests. args[0] is the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Attack-graph MDP compiler, terrain transforms and RL trainer", "cyberterrain"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::uint64_t> seed;
    std::string out_path, config_path;
    app.add_option("--seed", seed, "Seed for generation and training");
    app.add_option("--out", out_path, "Output file or directory");
    app.add_option("--config", config_path, "Config document");

    cli::TerrainFlags terrain_flags;
    auto add_terrain_flags = [&](CLI::App* sub) {
        sub->add_option("--mode", terrain_flags.mode, "Terrain mode: vanilla, reward or state");
        sub->add_option("--w", terrain_flags.w, "Reward penalty weight (<= 0)");
        sub->add_option("--protocol", terrain_flags.protocol, "Restrict firewalls to one protocol");
    };

    std::string graph_path;
    auto* validate_cmd = app.add_subcommand("validate", "Check an attack-graph document");
    validate_cmd->add_option("graph", graph_path, "Graph document")->required();

    std::string preset, gauntlet;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic attack graph");
    gen_cmd->add_option("--preset", preset, "Named parameter set: enterprise-scale");
    gen_cmd->add_option("--gauntlet", gauntlet, "Plant the two-path fixture; firewall blocks these protocols (comma list)");

    double discount = kDefaultDiscount;
    auto* build_cmd = app.add_subcommand("build", "Compile a graph into an MDP dump");
    build_cmd->add_option("graph", graph_path, "Graph document")->required();
    build_cmd->add_option("--discount", discount, "Discount factor in (0,1]");
    add_terrain_flags(build_cmd);

    std::string algo;
    std::optional<std::size_t> episodes;
    auto add_train_flags = [&](CLI::App* sub) {
        sub->add_option("--algo", algo, "tabular or dqn");
        sub->add_option("--episodes", episodes, "Training episodes");
    };
    auto* train_cmd = app.add_subcommand("train", "Train on one MDP variant");
    train_cmd->add_option("graph", graph_path, "Graph document (overrides the config's input)");
    add_terrain_flags(train_cmd);
    add_train_flags(train_cmd);

    bool protocols = false;
    std::size_t jobs = 1;
    auto* compare_cmd = app.add_subcommand("compare", "Train and compare terrain variants");
    add_terrain_flags(compare_cmd);
    add_train_flags(compare_cmd);
    compare_cmd->add_flag("--protocols", protocols, "Add per-protocol sweeps for every terrain mode");
    compare_cmd->add_option("--jobs", jobs, "Worker threads for variant runs")->check(CLI::PositiveNumber);

    std::string highlight;
    auto* dot_cmd = app.add_subcommand("export-dot", "Render a graph as DOT");
    dot_cmd->add_option("graph", graph_path, "Graph document")->required();
    dot_cmd->add_option("--highlight", highlight, "Comma-separated vertex path to color");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitParseOrIo;
    }

    auto emit = [&](const std::string& text) {
        if (out_path.empty())
            out << text;
        else
            write_text_file(out_path, text);
    };
    auto resolve_train = [&](RunConfig& cfg) {
        if (!algo.empty()) {
            auto a = algorithm_from_token(algo);
            if (!a) throw ParseError("unknown algorithm '" + algo + "' (expected tabular or dqn)");
            cfg.train.algorithm = *a;
        }
        if (episodes) cfg.train.episodes = *episodes;
        if (seed) cli::apply_seed(cfg, *seed);
    };

    try {
        if (*validate_cmd) {
            std::vector<std::string> warnings;
            auto doc = decode_attack_graph(read_text_file(graph_path), &warnings);
            for (const auto& w : warnings) err << "warning: " << w << "\n";
            auto violations = validate(doc);
            for (const auto& v : violations) out << v << "\n";
            return violations.empty() ? kExitOk : kExitDomain;
        }
        if (*gen_cmd) {
            TopologyParams params;
            if (!config_path.empty())
                params = topology_params_from_json(detail::parse_json(read_text_file(config_path), config_path));
            if (!preset.empty()) {
                if (preset != "enterprise-scale") throw ParseError("unknown preset '" + preset + "'");
                params = enterprise_scale_params(params.seed);
            }
            if (seed) params.seed = *seed;
            AttackGraph g = gauntlet.empty() ? generate(params)
                                             : plant_gauntlet(params, cli::parse_protocol_list(gauntlet));
            emit(serialize_attack_graph(g));
            return kExitOk;
        }
        if (*build_cmd) {
            auto g = cli::load_graph(graph_path, err);
            auto mdp = apply_terrain(build_cvss_mdp(g, discount), g, cli::terrain_from_flags(terrain_flags));
            emit(dump_mdp(mdp));
            return kExitOk;
        }
        if (*dot_cmd) {
            auto g = cli::load_graph(graph_path, err);
            std::vector<std::string> path;
            std::stringstream ss(highlight);
            for (std::string id; std::getline(ss, id, ',');)
                if (!id.empty()) path.push_back(id);
            emit(export_dot(g, path));
            return kExitOk;
        }
        if (*train_cmd) {
            RunConfig cfg;
            if (!config_path.empty())
                cfg = parse_run_config(read_text_file(config_path));
            else
                cfg.terrain = {TerrainConfig{}};
            if (!graph_path.empty()) cfg.input = graph_path;
            if (config_path.empty() && graph_path.empty()) throw ParseError("train needs a graph or --config");
            resolve_train(cfg);
            cli::apply_terrain_flags(cfg, terrain_flags);
            if (cfg.terrain.size() != 1)
                throw DomainError("train runs one variant; pick it with --mode or a single terrain entry");
            auto g = cli::materialize_input(cfg, err);
            auto vanilla = build_cvss_mdp(g, cfg.train.discount);
            TrainResult trained;
            auto result = run_variant(g, vanilla, cfg.terrain.front(), cfg.train, &trained);
            if (!out_path.empty()) {
                std::filesystem::create_directories(out_path);
                write_text_file(out_path + "/curve.csv", curve_csv(result.curve));
                if (const auto* q = std::get_if<TabularQ>(&trained.q))
                    write_text_file(out_path + "/qtable.csv",
                                    qtable_csv(apply_terrain(vanilla, g, cfg.terrain.front()), *q));
            }
            MetricsReport one;
            one.variants.push_back(std::move(result));
            out << summary_csv(one);
            return kExitOk;
        }
        if (*compare_cmd) {
            if (config_path.empty()) throw ParseError("compare needs --config");
            RunConfig cfg = parse_run_config(read_text_file(config_path));
            resolve_train(cfg);
            cli::apply_terrain_flags(cfg, terrain_flags);
            if (protocols) cfg.protocols = true;
            if (!out_path.empty()) cfg.output_dir = out_path;
            try {
                cli::run_compare(cfg, jobs, out, err);
            } catch (...) {
                std::error_code ec;
                if (!cfg.output_dir.empty() && std::filesystem::is_directory(cfg.output_dir, ec)) {
                    try {
                        write_text_file(cfg.output_dir + "/" + kIncompleteMarker, "compare run failed\n");
                    } catch (const Error&) {
                    }
                }
                throw;
            }
            return kExitOk;
        }
    } catch (const ParseError& e) {
        return cli::report_error(err, e, kExitParseOrIo);
    } catch (const IoError& e) {
        return cli::report_error(err, e, kExitParseOrIo);
    } catch (const ValidationError& e) {
        for (const auto& v : e.violations()) err << v << "\n";
        return cli::report_error(err, e, kExitDomain);
    } catch (const DomainError& e) {
        return cli::report_error(err, e, kExitDomain);
    } catch (const std::filesystem::filesystem_error& e) {
        return cli::report_error(err, e, kExitParseOrIo);
    }
    return kExitOk;
}

}  // namespace cyberterrain
