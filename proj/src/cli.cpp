#include "gpfock/cli.hpp"

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <cstdio>
#include <json.hpp>
#include <random>
#include <sstream>

#include "gpfock/correlation.hpp"
#include "gpfock/coxeter.hpp"
#include "gpfock/graph.hpp"
#include "gpfock/graph_io.hpp"
#include "gpfock/graph_product.hpp"
#include "gpfock/qfock.hpp"

namespace gpfock {
namespace {

using nlohmann::json;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
}

json load_json_argument(const std::string& path_or_inline) {
    const std::size_t start = path_or_inline.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && path_or_inline[start] == '{')
        return parse_json_text(path_or_inline);
    return parse_json_text(read_file(path_or_inline));
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& item : split(text, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw input_error("bad integer '" + item + "'");
        }
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw input_error("bad number '" + item + "'");
        }
    }
    return out;
}

std::vector<std::string> split_word(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string letter;
    while (in >> letter) out.push_back(letter);
    return out;
}

void emit(std::ostream& out, const json& j) { out << j.dump() << "\n"; }

GraphProduct product_from(const LabeledGraph& lg) { return GraphProduct(lg.graph, lg.labels); }

std::vector<Syllable> syllables_from_json(const GraphProduct& gp, const json& word) {
    if (!word.is_array()) throw input_error("word must be a JSON array of [vertex, element]");
    std::vector<Syllable> out;
    for (const auto& pair : word) {
        if (!pair.is_array() || pair.size() != 2)
            throw input_error("each syllable must be a [vertex, element] pair");
        const int v = gp.graph().vertex_index(pair.at(0).get<std::string>());
        out.push_back({v, parse_element(gp.group(v), pair.at(1).get<std::string>())});
    }
    return out;
}

json syllables_to_json(const GraphProduct& gp, const GPElement& x) {
    json out = json::array();
    for (const Syllable& s : x.syllables)
        out.push_back({gp.graph().vertex_name(s.vertex), format_element(gp.group(s.vertex), s.elem)});
    return out;
}

int cmd_graph_rigid(const std::string& input, std::ostream& out) {
    const LabeledGraph lg = load_graph_argument(input);
    const RigidityReport r = is_rigid(lg.graph);
    json j;
    j["rigid"] = r.rigid;
    if (!r.rigid) {
        j["witness"] = r.witness;
        j["second_link"] = r.second_link;
    }
    emit(out, j);
    return r.rigid ? 0 : 1;
}

int cmd_graph_iso(const std::string& a, const std::string& b, int max_vertices,
                  std::ostream& out) {
    const LabeledGraph ga = load_graph_argument(a);
    const LabeledGraph gb = load_graph_argument(b);
    if (ga.labels.empty() != gb.labels.empty())
        throw input_error("either both or neither graph may carry labels");
    const auto mapping =
        graphs_isomorphic(ga.graph, gb.graph, ga.labels.empty() ? nullptr : &ga.labels,
                          gb.labels.empty() ? nullptr : &gb.labels, max_vertices);
    json j;
    j["isomorphic"] = mapping.has_value();
    if (mapping) j["mapping"] = *mapping;
    emit(out, j);
    return mapping ? 0 : 1;
}

int cmd_coxeter_reduce(const std::string& graph_arg, const std::string& word, std::ostream& out) {
    const LabeledGraph lg = load_graph_argument(graph_arg);
    const Word nf = normal_form(lg.graph, word_from_names(lg.graph, split_word(word)));
    json j;
    j["normal_form"] = word_to_names(lg.graph, nf);
    emit(out, j);
    return 0;
}

int cmd_coxeter_equal(const std::string& graph_arg, const std::string& w1, const std::string& w2,
                      std::ostream& out) {
    const LabeledGraph lg = load_graph_argument(graph_arg);
    const bool equal = words_equal(lg.graph, word_from_names(lg.graph, split_word(w1)),
                                   word_from_names(lg.graph, split_word(w2)));
    json j;
    j["equal"] = equal;
    emit(out, j);
    return equal ? 0 : 1;
}

int cmd_coxeter_growth(const std::string& graph_arg, int max_length, long long max_items,
                       std::ostream& out) {
    const LabeledGraph lg = load_graph_argument(graph_arg);
    Budget budget = Budget::from_env();
    if (max_items > 0) budget.max_items = max_items;
    const auto groups = enumerate_elements(lg.graph, max_length, budget);
    json counts = json::array();
    for (const auto& group : groups) counts.push_back(group.size());
    json j;
    j["counts"] = std::move(counts);
    emit(out, j);
    return 0;
}

int cmd_gp_normal_form(const std::string& graph_arg, const std::string& word_json,
                       std::ostream& out) {
    const LabeledGraph lg = load_graph_argument(graph_arg);
    const GraphProduct gp = product_from(lg);
    const GPElement x = gp.normal_form(syllables_from_json(gp, parse_json_text(word_json)));
    json j;
    j["syllables"] = syllables_to_json(gp, x);
    emit(out, j);
    return 0;
}

json gamma_prime_report(const GammaPrime& c) {
    json j;
    VertexLabels produced_labels;
    for (int v = 0; v < c.produced.vertex_count(); ++v)
        produced_labels[c.produced.vertex_name(v)] = c.produced_groups[v].to_string();
    j["graph"] = graph_to_json(c.produced, produced_labels);
    j["s_prime_size"] = c.produced.vertex_count();
    j["index"] = c.sub.index();
    j["subgroup_rank"] = c.schreier_gens.size();
    json reps = json::array();
    const GroupSpec ambient = c.source_groups[c.s1];
    for (const auto& rep : c.coset_reps) reps.push_back(format_element(ambient, {rep, 0}));
    j["coset_representatives"] = std::move(reps);
    json schreier = json::array();
    for (const auto& gen : c.schreier_gens) schreier.push_back(format_element(ambient, {gen, 0}));
    j["schreier_generators"] = std::move(schreier);
    j["source_rigid"] = is_rigid(c.source).rigid;
    j["produced_rigid"] = is_rigid(c.produced).rigid;
    return j;
}

int cmd_gp_gamma_prime(const std::string& input, std::ostream& out) {
    const ConstructionDescriptor d = construction_from_json(load_json_argument(input));
    std::vector<GroupSpec> labels;
    for (const auto& name : d.input.graph.vertices())
        labels.push_back(GroupSpec::parse(d.input.labels.at(name)));
    const GammaPrime c = construct_gamma_prime(d.input.graph, labels, d.s1, d.sub);
    const json j = gamma_prime_report(c);
    emit(out, j);
    const bool falsified = j.at("source_rigid").get<bool>() && !j.at("produced_rigid").get<bool>();
    return falsified ? 1 : 0;
}

int cmd_gp_verify(const std::string& input, int radius, int pairs, unsigned long long seed,
                  long long max_items, std::ostream& out) {
    const ConstructionDescriptor d = construction_from_json(load_json_argument(input));
    std::vector<GroupSpec> labels;
    for (const auto& name : d.input.graph.vertices())
        labels.push_back(GroupSpec::parse(d.input.labels.at(name)));
    const GammaPrime c = construct_gamma_prime(d.input.graph, labels, d.s1, d.sub);

    Budget budget = Budget::from_env();
    if (max_items > 0) budget.max_items = max_items;

    const BallReport ball_report = verify_phi_injective_on_ball(c, radius, budget);

    const GraphProduct cover = c.cover();
    const GraphProduct ambient = c.ambient();
    const std::vector<GPElement> sample_ball = ball(cover, std::min(radius, 2), budget);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, sample_ball.size() - 1);
    int hom_failures = 0;
    for (int i = 0; i < pairs; ++i) {
        const GPElement& x = sample_ball[pick(rng)];
        const GPElement& y = sample_ball[pick(rng)];
        const GPElement lhs = phi_apply(c, cover.multiply(x, y));
        const GPElement rhs = ambient.multiply(phi_apply(c, x), phi_apply(c, y));
        if (!(lhs == rhs)) ++hom_failures;
    }

    const CosetActionReport action = coset_action(c);
    const bool pass = ball_report.kernel_trivial && hom_failures == 0 && action.transitive &&
                      action.phi_images_stabilize_basepoint;
    json j;
    j["ball_radius"] = radius;
    j["elements_checked"] = ball_report.elements_checked;
    j["complete"] = ball_report.complete;
    j["kernel_trivial"] = ball_report.kernel_trivial;
    if (!ball_report.violation.empty()) j["violation"] = ball_report.violation;
    j["hom_pairs"] = pairs;
    j["hom_failures"] = hom_failures;
    j["coset_transitive"] = action.transitive;
    j["index"] = action.index;
    j["phi_stabilizes_basepoint"] = action.phi_images_stabilize_basepoint;
    j["pass"] = pass;
    emit(out, j);
    return pass ? 0 : 1;
}

int cmd_inv_gf(const std::string& f_text, const std::string& fp_text, std::ostream& out) {
    const GfVerdict v = gf_distinguish(parse_int_list(f_text), parse_int_list(fp_text));
    json j;
    j["verdict"] = v.verdict;
    j["invariant_a"] = v.invariant_a;
    j["invariant_b"] = v.invariant_b;
    emit(out, j);
    return 0;
}

int cmd_inv_tensor_match(const std::string& labels_text, const std::string& sig_text,
                         std::ostream& out) {
    const std::vector<std::string> labels = split(labels_text, ',');
    std::vector<TensorSignature> targets;
    for (const auto& block : split(sig_text, ';')) targets.push_back(split(block, ','));
    const auto partition = tensor_match(labels, targets);
    json j;
    j["match"] = partition.has_value();
    if (partition) {
        json blocks = json::array();
        for (const auto& block : *partition) {
            json ids = json::array();
            for (int i : block) ids.push_back(i + 1);
            blocks.push_back(std::move(ids));
        }
        j["partition"] = std::move(blocks);
    }
    emit(out, j);
    return partition ? 0 : 1;
}

int cmd_qfock_tn(const std::string& q_text, int dim, int max_level, std::ostream& out) {
    const std::vector<double> qs = parse_double_list(q_text);
    out << "q,n,dim,min_eig,max_eig\n";
    bool psd = true;
    for (double q : qs) {
        for (int n = 1; n <= max_level; ++n) {
            const Eigen::MatrixXd t = tensor_gram(dim, n, q);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t,
                                                                  Eigen::EigenvaluesOnly);
            const double lo = solver.eigenvalues().minCoeff();
            const double hi = solver.eigenvalues().maxCoeff();
            if (lo < -1e-10) psd = false;
            out << fmt(q) << "," << n << "," << dim << "," << fmt(lo) << "," << fmt(hi) << "\n";
        }
    }
    return psd ? 0 : 1;
}

int cmd_qfock_moments(const std::string& q_text, int dim, const std::string& powers_text,
                      std::ostream& out) {
    const std::vector<double> qs = parse_double_list(q_text);
    const std::vector<int> powers = parse_int_list(powers_text);
    int cap = 0;
    for (int p : powers) cap = std::max(cap, p);
    out << "q,power,moment,oracle,diff\n";
    bool within = true;
    for (double q : qs) {
        const FockSpace space(q, dim, cap);
        const Eigen::VectorXd xi = Eigen::VectorXd::Unit(dim, 0);
        for (int p : powers) {
            const double moment = vacuum_moment(space, xi, p);
            const double oracle = pair_partition_oracle(q, p);
            const double diff = moment - oracle;
            if (std::abs(diff) > 1e-9) within = false;
            out << fmt(q) << "," << p << "," << fmt(moment) << "," << fmt(oracle) << ","
                << fmt(diff) << "\n";
        }
    }
    return within ? 0 : 1;
}

int cmd_qfock_decay(const std::string& q_text, int k, int max_level, int dim_h, int dim_k,
                    unsigned long long seed, int samples, std::ostream& out, std::ostream& err) {
    const std::vector<double> qs = parse_double_list(q_text);
    if (k < 1) throw input_error("k must be >= 1");
    const int dim = dim_h + dim_k;
    const Splitting split{dim_h, dim_k};
    const int cap = max_level + 2 * k;
    out << "q,n,ratio\n";
    for (double q : qs) {
        const FockSpace space(q, dim, cap);
        // Side word: the k-fold tensor power of the first second-summand
        // coordinate, which has k second-summand factors by construction.
        WickWordSpec side{k, Eigen::VectorXd::Zero(space.level_dim(k))};
        long long side_index = 0;
        for (int t = 0; t < k; ++t) side_index = side_index * dim + dim_h;
        side.coeffs(side_index) = 1.0;

        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double fitted_c = 0.0;
        for (int n = 1; n <= max_level; ++n) {
            // First-summand basis positions at level n.
            std::vector<long long> support;
            for (long long idx = 0; idx < space.level_dim(n); ++idx) {
                long long rest = idx;
                bool first_only = true;
                for (int t = 0; t < n; ++t) {
                    if (rest % dim >= dim_h) first_only = false;
                    rest /= dim;
                }
                if (first_only) support.push_back(idx);
            }
            double ratio = 0.0;
            for (int s = 0; s < samples; ++s) {
                Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(space.level_dim(n));
                double norm2 = 0.0;
                for (long long idx : support) {
                    const double c = gauss(rng);
                    coeffs(idx) = c;
                    norm2 += c * c;
                }
                coeffs /= std::sqrt(norm2);
                const PhiMapResult r = phi_map(space, split, side, side, {n, coeffs});
                ratio = std::max(ratio, r.norm_ratio);
            }
            fitted_c = std::max(fitted_c, ratio / std::pow(std::abs(q), double(k) * n));
            out << fmt(q) << "," << n << "," << fmt(ratio) << "\n";
        }
        err << "fitted C (q=" << fmt(q) << ", k=" << k << "): " << fmt(fitted_c) << "\n";
    }
    return 0;
}

int cmd_qfock_deform(const std::string& t_text, double q, int dim_per_summand, int max_level,
                     std::ostream& out) {
    const std::vector<double> ts = parse_double_list(t_text);
    const int d = dim_per_summand;
    const Splitting split{d, d};
    const FockSpace space(q, 2 * d, max_level);
    const FockOperator projection = conditional_projection(space, split);

    json report;
    report["q"] = q;
    report["dim_per_summand"] = d;
    double worst = 0.0;
    json entries = json::array();
    for (double t : ts) {
        const FockOperator compressed = projection.compose(rotation_deformation(space, split, t));
        for (int n = 1; n <= max_level; ++n) {
            std::vector<long long> support;
            for (long long idx = 0; idx < space.level_dim(n); ++idx) {
                long long rest = idx;
                bool first_only = true;
                for (int m = 0; m < n; ++m) {
                    if (rest % (2 * d) >= d) first_only = false;
                    rest /= 2 * d;
                }
                if (first_only) support.push_back(idx);
            }
            Eigen::MatrixXd block(support.size(), support.size());
            for (std::size_t r = 0; r < support.size(); ++r)
                for (std::size_t c = 0; c < support.size(); ++c)
                    block(r, c) = compressed.matrix()(space.offset(n) + support[r],
                                                      space.offset(n) + support[c]);
            const Eigen::VectorXd sv = block.jacobiSvd().singularValues();
            const double expected = std::pow(std::cos(t), n);
            const double err_lo = std::abs(sv.minCoeff() - std::abs(expected));
            const double err_hi = std::abs(sv.maxCoeff() - std::abs(expected));
            worst = std::max({worst, err_lo, err_hi});
            json entry;
            entry["t"] = t;
            entry["level"] = n;
            entry["min_singular"] = sv.minCoeff();
            entry["max_singular"] = sv.maxCoeff();
            entry["expected"] = std::abs(expected);
            entries.push_back(std::move(entry));
        }
    }
    report["levels"] = std::move(entries);
    report["max_abs_error"] = worst;
    report["pass"] = worst <= 1e-10;
    emit(out, report);
    return worst <= 1e-10 ? 0 : 1;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty()) throw input_error("usage: gpfock <group> <command> [options]");
    const std::string domain = args[0];
    if (domain == "--help" || domain == "-h") {
        out << "usage: gpfock <group> <command> [options]\n"
               "groups: graph (rigid, iso), coxeter (reduce, equal, growth),\n"
               "        gp (normal-form, gamma-prime, verify), inv (gf, tensor-match),\n"
               "        qfock (tn, moments, decay, deform)\n"
               "Run 'gpfock <group> <command> --help' for flags.\n";
        return 0;
    }
    if (args.size() < 2) throw input_error("missing command after '" + domain + "'");
    const std::string command = args[1];
    const std::string leaf = domain + " " + command;

    CLI::App app{"gpfock " + leaf};
    app.name("gpfock " + leaf);

    std::string input, input2, graph_arg, word, word2, q_text = "0.5", powers = "2,4,6,8";
    std::string labels_text, sig_text, f_text, fp_text, t_text = "0.3";
    int max_vertices = 12, max_length = 3, radius = 3, pairs = 200, dim = 2, max_level = 4;
    int k = 1, dim_h = 1, dim_k = 1, samples = 8;
    double q_single = 0.5;
    unsigned long long seed = 0;
    long long max_items = 0;

    std::function<int()> run;
    if (leaf == "graph rigid") {
        app.add_option("input", input, "graph JSON/DOT file or inline JSON")->required();
        run = [&] { return cmd_graph_rigid(input, out); };
    } else if (leaf == "graph iso") {
        app.add_option("first", input)->required();
        app.add_option("second", input2)->required();
        app.add_option("--max-vertices", max_vertices);
        run = [&] { return cmd_graph_iso(input, input2, max_vertices, out); };
    } else if (leaf == "coxeter reduce") {
        app.add_option("--graph", graph_arg)->required();
        app.add_option("--word", word, "whitespace-separated letters")->required();
        run = [&] { return cmd_coxeter_reduce(graph_arg, word, out); };
    } else if (leaf == "coxeter equal") {
        app.add_option("--graph", graph_arg)->required();
        app.add_option("--word1", word)->required();
        app.add_option("--word2", word2)->required();
        run = [&] { return cmd_coxeter_equal(graph_arg, word, word2, out); };
    } else if (leaf == "coxeter growth") {
        app.add_option("--graph", graph_arg)->required();
        app.add_option("--max-length", max_length)->required();
        app.add_option("--max-items", max_items);
        run = [&] { return cmd_coxeter_growth(graph_arg, max_length, max_items, out); };
    } else if (leaf == "gp normal-form") {
        app.add_option("--graph", graph_arg, "labeled graph")->required();
        app.add_option("--word", word, "JSON array of [vertex, element] pairs")->required();
        run = [&] { return cmd_gp_normal_form(graph_arg, word, out); };
    } else if (leaf == "gp gamma-prime") {
        app.add_option("input", input, "construction descriptor JSON")->required();
        run = [&] { return cmd_gp_gamma_prime(input, out); };
    } else if (leaf == "gp verify") {
        app.add_option("input", input, "construction descriptor JSON")->required();
        app.add_option("--radius", radius);
        app.add_option("--pairs", pairs);
        app.add_option("--seed", seed);
        app.add_option("--max-items", max_items);
        run = [&] { return cmd_gp_verify(input, radius, pairs, seed, max_items, out); };
    } else if (leaf == "inv gf") {
        app.add_option("--F", f_text)->required();
        app.add_option("--Fprime", fp_text)->required();
        run = [&] { return cmd_inv_gf(f_text, fp_text, out); };
    } else if (leaf == "inv tensor-match") {
        app.add_option("--labels", labels_text, "comma-separated labels")->required();
        app.add_option("--signatures", sig_text, "semicolon-separated label multisets")
            ->required();
        run = [&] { return cmd_inv_tensor_match(labels_text, sig_text, out); };
    } else if (leaf == "qfock tn") {
        app.add_option("--q", q_text);
        app.add_option("--dim", dim);
        app.add_option("--max-level", max_level);
        run = [&] { return cmd_qfock_tn(q_text, dim, max_level, out); };
    } else if (leaf == "qfock moments") {
        app.add_option("--q", q_text);
        app.add_option("--dim", dim);
        app.add_option("--powers", powers);
        run = [&] { return cmd_qfock_moments(q_text, dim, powers, out); };
    } else if (leaf == "qfock decay") {
        app.add_option("--q", q_text);
        app.add_option("--k", k);
        app.add_option("--max-level", max_level);
        app.add_option("--dim-h", dim_h);
        app.add_option("--dim-k", dim_k);
        app.add_option("--seed", seed);
        app.add_option("--samples", samples);
        run = [&] { return cmd_qfock_decay(q_text, k, max_level, dim_h, dim_k, seed, samples,
                                           out, err); };
    } else if (leaf == "qfock deform") {
        app.add_option("--t", t_text);
        app.add_option("--q", q_single);
        app.add_option("--dim", dim);
        app.add_option("--max-level", max_level);
        run = [&] { return cmd_qfock_deform(t_text, q_single, dim, max_level, out); };
    } else {
        throw input_error("unknown subcommand: '" + leaf + "'");
    }

    std::vector<const char*> argv{"gpfock"};
    for (std::size_t i = 2; i < args.size(); ++i) argv.push_back(args[i].c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        throw input_error(std::string("bad arguments: ") + e.what());
    }
    return run();
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const budget_error& e) {
        err << "error: budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const input_error& e) {
        err << "error: malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace gpfock
