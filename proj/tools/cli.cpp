#include "cli.hpp"

#include "mobnet/errors.hpp"
#include "mobnet/geo.hpp"
#include "mobnet/graph.hpp"
#include "mobnet/ingest.hpp"
#include "mobnet/io.hpp"
#include "mobnet/metrics.hpp"
#include "mobnet/percolation.hpp"
#include "mobnet/synthetic.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <set>

namespace mobnet::cli {

namespace fs = std::filesystem;

namespace {

const std::set<std::string> kConfigKeys = {
    "flows",  "registry", "lockdown_date", "pre_days",     "post_days", "direction", "out",
    "seed",   "country",  "archetype",     "nodes",        "groups",    "weight_scale", "days",
    "start",  "retention",
};

class Layers {
public:
    Layers(const nlohmann::json& file, const std::map<std::string, std::string>& flags) : file_(file), flags_(flags) {}

    std::optional<std::string> text(const std::string& key) const
    {
        if (auto it = flags_.find(key); it != flags_.end()) return it->second;
        if (!file_.is_object() || !file_.contains(key)) return std::nullopt;
        const auto& v = file_.at(key);
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number()) return v.dump();
        throw ArgumentError("config key '" + key + "' must be a string or number");
    }

    template <typename T>
    void number(const std::string& key, T& target) const
    {
        auto t = text(key);
        if (!t) return;
        T value{};
        auto [ptr, ec] = std::from_chars(t->data(), t->data() + t->size(), value);
        if (ec != std::errc{} || ptr != t->data() + t->size())
            throw ArgumentError("'" + *t + "' is not a valid value for " + key);
        target = value;
    }

    void string(const std::string& key, std::string& target) const
    {
        if (auto t = text(key)) target = *t;
    }

private:
    const nlohmann::json& file_;
    const std::map<std::string, std::string>& flags_;
};

std::string require_path(const std::string& path, const char* flag)
{
    if (path.empty()) throw ArgumentError(std::string(flag) + " is required");
    return path;
}

Date require_lockdown(const RunConfig& config)
{
    if (!config.lockdown_date) throw ArgumentError("--lockdown-date (or --country) is required");
    return *config.lockdown_date;
}

fs::path output_dir(const RunConfig& config)
{
    fs::path dir(config.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw ValidationError("cannot create output directory '" + config.out + "'");
    return dir;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write '" + path.string() + "'");
    body(out);
    out.flush();
    if (!out) throw ValidationError("failed writing '" + path.string() + "'");
}

struct Inputs {
    NodeRegistry registry;
    std::vector<FlowRecord> records;
};

Inputs load_inputs(const RunConfig& config)
{
    Inputs in;
    in.registry = read_node_registry(require_path(config.registry, "--registry"));
    in.records = read_flow_records(require_path(config.flows, "--flows"));
    check_references(in.records, in.registry);
    return in;
}

std::vector<SweepDirection> directions(const std::string& text)
{
    if (text == "both") return {SweepDirection::increasing, SweepDirection::decreasing};
    return {parse_direction(text)};
}

MobilityGraph pre_lockdown_graph(const RunConfig& config, const Inputs& in)
{
    auto windows = lockdown_windows(require_lockdown(config), config.pre_days, config.post_days);
    auto graph = build_graph(in.records, windows.pre, in.registry);
    if (graph.edge_count() == 0)
        throw ArgumentError("the " + std::to_string(config.pre_days) + "-day window before " +
                            format_date(*config.lockdown_date) + " holds no flows; nothing to percolate");
    return graph;
}

void write_graph(const fs::path& dir, const std::string& stem, const MobilityGraph& graph)
{
    write_file(dir / (stem + ".csv"), [&](std::ostream& o) { write_edge_list(o, graph); });
    write_file(dir / (stem + ".json"), [&](std::ostream& o) { o << graph_sidecar(graph).dump(2) << '\n'; });
}

} // namespace

CountryPreset country_preset(const std::string& name)
{
    using namespace std::chrono;
    if (name == "france") return {sys_days{year{2020} / March / 17}, 12};
    if (name == "italy") return {sys_days{year{2020} / March / 9}, 14};
    if (name == "uk") return {sys_days{year{2020} / March / 24}, 13};
    throw ArgumentError("unknown country '" + name + "' (expected france, italy or uk)");
}

RunConfig resolve_config(const nlohmann::json& file, const std::map<std::string, std::string>& flags)
{
    if (!file.is_null() && !file.is_object()) throw ArgumentError("config file must hold a JSON object");
    if (file.is_object())
        for (const auto& [key, value] : file.items())
            if (!kConfigKeys.contains(key)) throw ArgumentError("unknown config key '" + key + "'");

    Layers layers(file, flags);
    RunConfig c;
    if (auto country = layers.text("country")) {
        auto preset = country_preset(*country);
        c.lockdown_date = preset.lockdown;
        c.pre_days = c.post_days = preset.window_days;
    }
    layers.string("flows", c.flows);
    layers.string("registry", c.registry);
    if (auto d = layers.text("lockdown_date")) c.lockdown_date = parse_date(*d);
    layers.number("pre_days", c.pre_days);
    layers.number("post_days", c.post_days);
    layers.string("direction", c.direction);
    layers.string("out", c.out);
    layers.number("seed", c.seed);

    if (auto a = layers.text("archetype")) c.synth.archetype = parse_archetype(*a);
    layers.number("nodes", c.synth.node_count);
    layers.number("groups", c.synth.group_count);
    layers.number("weight_scale", c.synth.weight_scale);
    layers.number("days", c.synth.days);
    layers.number("retention", c.synth.lockdown_retention);
    if (auto s = layers.text("start")) c.synth.start = parse_date(*s);
    c.synth.seed = c.seed;
    c.synth.lockdown = c.lockdown_date;

    if (c.pre_days < 1 || c.post_days < 1) throw ArgumentError("window lengths must be at least one day");
    if (c.direction != "both") parse_direction(c.direction);
    return c;
}

int cmd_metrics(const RunConfig& config, std::ostream& log)
{
    auto in = load_inputs(config);
    auto dir = output_dir(config);
    auto series = daily_series(in.records, in.registry);

    std::vector<ConnectivityRow> connectivity;
    for (const auto& g : series) {
        auto labels = weak_components(g);
        connectivity.push_back({day_of(g.window().start), labels.component_count, labels.lwcc_size});
    }
    auto efficiency_rows = efficiency_gini_series(series);
    write_file(dir / "connectivity.csv", [&](std::ostream& o) { write_connectivity_csv(o, connectivity); });
    write_file(dir / "efficiency.csv", [&](std::ostream& o) { write_efficiency_csv(o, efficiency_rows); });

    if (config.lockdown_date) {
        auto windows = lockdown_windows(*config.lockdown_date, config.pre_days, config.post_days);
        auto pre = build_graph(in.records, windows.pre, in.registry);
        auto post = build_graph(in.records, windows.post, in.registry);
        write_graph(dir, "pre_lockdown_graph", pre);
        write_graph(dir, "post_lockdown_graph", post);
        write_file(dir / "lockdown_comparison.csv", [&](std::ostream& o) {
            o << "period,window_start,window_end,node_count,edge_count,num_wcc,lwcc_size,global_efficiency\n";
            for (auto [label, g] : {std::pair{"pre", &pre}, std::pair{"post", &post}}) {
                auto labels = weak_components(*g);
                o << label << ',' << format_rfc3339(g->window().start) << ',' << format_rfc3339(g->window().end) << ','
                  << g->node_count() << ',' << g->edge_count() << ',' << labels.component_count << ','
                  << labels.lwcc_size << ',' << format_number(global_efficiency_or_zero(*g)) << '\n';
            }
        });
    }
    log << "metrics: " << series.size() << " daily graphs written to " << dir.string() << '\n';
    return kOk;
}

int cmd_percolate(const RunConfig& config, std::ostream& log)
{
    auto in = load_inputs(config);
    auto baseline = pre_lockdown_graph(config, in);
    auto dir = output_dir(config);

    for (auto direction : directions(config.direction)) {
        auto trace = percolation_sweep(baseline, direction);
        write_file(dir / ("trace_" + std::string(to_string(direction)) + ".csv"), [&](std::ostream& o) {
            write_trace_header(o);
            write_trace_rows(o, trace);
        });
    }
    auto persistence = node_persistence(baseline, SweepDirection::increasing);
    write_file(dir / "persistence.csv", [&](std::ostream& o) { write_persistence_csv(o, persistence); });

    auto windows = lockdown_windows(*config.lockdown_date, config.pre_days, config.post_days);
    auto overlay = empirical_overlay(in.records, in.registry, *config.lockdown_date, windows.pre);
    write_file(dir / "overlay.csv", [&](std::ostream& o) { write_overlay_csv(o, overlay); });

    auto cells = voronoi(in.registry, default_bounds(in.registry));
    write_file(dir / "persistence.geojson",
               [&](std::ostream& o) { o << export_persistence_geojson(cells, persistence).dump() << '\n'; });

    log << "percolate: baseline " << baseline.node_count() << " nodes, " << baseline.edge_count() << " edges, "
        << distinct_weights(baseline).size() << " iterations; outputs in " << dir.string() << '\n';
    return kOk;
}

int cmd_overlay(const RunConfig& config, std::ostream& log)
{
    auto in = load_inputs(config);
    auto windows = lockdown_windows(require_lockdown(config), config.pre_days, config.post_days);
    auto overlay = empirical_overlay(in.records, in.registry, *config.lockdown_date, windows.pre);
    auto dir = output_dir(config);
    write_file(dir / "overlay.csv", [&](std::ostream& o) { write_overlay_csv(o, overlay); });
    log << "overlay: " << overlay.size() << " weekly points written to " << dir.string() << '\n';
    return kOk;
}

int cmd_synth(const RunConfig& config, std::ostream& log)
{
    auto data = generate_synthetic(config.synth);
    auto dir = output_dir(config);
    write_file(dir / "flows.csv", [&](std::ostream& o) { write_flow_records(o, data.records); });
    write_file(dir / "registry.csv", [&](std::ostream& o) { write_node_registry(o, data.registry); });
    log << "synth: " << to_string(config.synth.archetype) << ", " << data.registry.size() << " sites, "
        << data.records.size() << " flow records written to " << dir.string() << '\n';
    return kOk;
}

int cmd_voronoi(const RunConfig& config, std::ostream& log)
{
    auto registry = read_node_registry(require_path(config.registry, "--registry"));
    auto cells = voronoi(registry, default_bounds(registry));
    auto dir = output_dir(config);
    write_file(dir / "voronoi.geojson", [&](std::ostream& o) { o << export_cells_geojson(cells, registry).dump() << '\n'; });
    if (!config.flows.empty() && config.lockdown_date) {
        auto in = load_inputs(config);
        auto persistence = node_persistence(pre_lockdown_graph(config, in), SweepDirection::increasing);
        write_file(dir / "persistence.geojson",
                   [&](std::ostream& o) { o << export_persistence_geojson(cells, persistence).dump() << '\n'; });
    }
    log << "voronoi: " << cells.size() << " cells written to " << dir.string() << '\n';
    return kOk;
}

int cmd_ingest_check(const RunConfig& config, std::ostream& log)
{
    if (config.flows.empty() && config.registry.empty()) throw ArgumentError("give --flows and/or --registry");
    std::optional<NodeRegistry> registry;
    if (!config.registry.empty()) {
        registry = read_node_registry(config.registry);
        log << "registry: " << registry->size() << " sites\n";
    }
    if (!config.flows.empty()) {
        auto records = read_flow_records(config.flows);
        std::set<Date> days;
        std::size_t zero = 0;
        for (const auto& r : records) {
            days.insert(day_of(r.window_start));
            if (r.weight == 0.0) ++zero;
        }
        log << "flows: " << records.size() << " records, " << zero << " zero-weight, " << days.size() << " days";
        if (!days.empty()) log << " (" << format_date(*days.begin()) << " .. " << format_date(*days.rbegin()) << ")";
        log << '\n';
        if (registry) {
            check_references(records, *registry);
            log << "references: ok\n";
        }
    }
    return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Mobility network connectivity, efficiency and percolation toolkit", "mobnet"};
    app.require_subcommand(1);
    std::map<std::string, std::string> flags;

    auto flag = [&flags](CLI::App* sub, const std::string& name, const std::string& key, const std::string& help) {
        sub->add_option_function<std::string>(name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
    };
    auto common = [&](CLI::App* sub) {
        flag(sub, "--flows", "flows", "flow records CSV");
        flag(sub, "--registry", "registry", "node registry CSV");
        flag(sub, "--lockdown-date", "lockdown_date", "intervention date, YYYY-MM-DD (UTC)");
        flag(sub, "--pre-days", "pre_days", "days aggregated before the lockdown");
        flag(sub, "--post-days", "post_days", "days aggregated after the lockdown");
        flag(sub, "--direction", "direction", "increasing, decreasing or both");
        flag(sub, "--out", "out", "output directory");
        flag(sub, "--seed", "seed", "random seed");
        flag(sub, "--country", "country", "france, italy or uk presets for date and windows");
        flag(sub, "--config", "config", "JSON config file; flags override its values");
    };

    using Command = int (*)(const RunConfig&, std::ostream&);
    const std::vector<std::tuple<std::string, std::string, Command>> commands = {
        {"metrics", "daily connectivity and efficiency time series", cmd_metrics},
        {"percolate", "percolation traces, persistence, overlay and persistence map", cmd_percolate},
        {"overlay", "weekly empirical points against the pre-lockdown aggregate", cmd_overlay},
        {"synth", "write a synthetic national dataset", cmd_synth},
        {"voronoi", "Voronoi cells of the registry as GeoJSON", cmd_voronoi},
        {"ingest-check", "parse and validate input files", cmd_ingest_check},
    };
    std::map<std::string, Command> dispatch;
    for (const auto& [name, help, fn] : commands) {
        auto* sub = app.add_subcommand(name, help);
        common(sub);
        dispatch[name] = fn;
        if (name == "synth") {
            flag(sub, "--archetype", "archetype", "star, multi_cluster or core_periphery");
            flag(sub, "--nodes", "nodes", "number of sites");
            flag(sub, "--hubs,--clusters,--core-size,--groups", "groups", "hub, cluster or core count");
            flag(sub, "--weight-scale", "weight_scale", "base flow weight");
            flag(sub, "--days", "days", "number of days to emit");
            flag(sub, "--start", "start", "first day, YYYY-MM-DD");
            flag(sub, "--retention", "retention", "fraction of strongest edges kept after the lockdown date");
        }
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        nlohmann::json file;
        if (auto it = flags.find("config"); it != flags.end()) {
            std::ifstream in(it->second);
            if (!in) throw ValidationError("cannot open config '" + it->second + "'");
            try {
                file = nlohmann::json::parse(in);
            } catch (const nlohmann::json::parse_error& e) {
                throw ParseError(it->second + ": " + e.what());
            }
            flags.erase(it);
        }
        auto config = resolve_config(file, flags);
        return dispatch.at(app.get_subcommands().front()->get_name())(config, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

} // namespace mobnet::cli
