#include "gpfock/graph_product.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "gpfock/commutation.hpp"

namespace gpfock {

GroupSpec GroupSpec::free_group(int rank) {
    if (rank < 1) throw input_error("free group rank must be >= 1");
    if (rank > 26) throw input_error("free group rank above 26 not supported");
    return {Kind::free_group, rank};
}

GroupSpec GroupSpec::integers() { return {Kind::integers, 0}; }

GroupSpec GroupSpec::cyclic(int modulus) {
    if (modulus < 2) throw input_error("cyclic modulus must be >= 2");
    return {Kind::cyclic, modulus};
}

GroupSpec GroupSpec::parse(const std::string& text) {
    if (text == "Z") return integers();
    if (text.size() >= 2 && text[0] == 'F') {
        try {
            return free_group(std::stoi(text.substr(1)));
        } catch (const std::exception&) {
            throw input_error("bad group label '" + text + "'");
        }
    }
    if (text.size() >= 3 && text[0] == 'Z' && text[1] == '/') {
        try {
            return cyclic(std::stoi(text.substr(2)));
        } catch (const std::exception&) {
            throw input_error("bad group label '" + text + "'");
        }
    }
    throw input_error("bad group label '" + text + "' (expected F<k>, Z or Z/<n>)");
}

std::string GroupSpec::to_string() const {
    switch (kind) {
        case Kind::free_group: return "F" + std::to_string(param);
        case Kind::integers: return "Z";
        case Kind::cyclic: return "Z/" + std::to_string(param);
    }
    return {};
}

std::vector<int> free_reduce(std::vector<int> letters) {
    std::vector<int> out;
    for (int x : letters) {
        if (x == 0) throw input_error("zero letter in free word");
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

std::vector<int> free_inverse(const std::vector<int>& letters) {
    std::vector<int> out(letters.rbegin(), letters.rend());
    for (int& x : out) x = -x;
    return out;
}

namespace {

char generator_letter(int index) { return static_cast<char>('a' + index); }

int letter_code(int signed_letter) {
    // a < a^-1 < b < b^-1 < ...
    const int gen = std::abs(signed_letter) - 1;
    return 2 * gen + (signed_letter < 0 ? 1 : 0);
}

bool free_word_less(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return letter_code(a[i]) < letter_code(b[i]);
    return false;
}

bool element_less(const GroupSpec& spec, const GroupElement& x, const GroupElement& y) {
    if (spec.kind == GroupSpec::Kind::free_group) return free_word_less(x.letters, y.letters);
    return x.exponent < y.exponent;
}

}  // namespace

GroupElement parse_element(const GroupSpec& spec, const std::string& text) {
    GroupElement e;
    if (spec.kind != GroupSpec::Kind::free_group) {
        try {
            e.exponent = std::stoll(text);
        } catch (const std::exception&) {
            throw input_error("bad exponent '" + text + "'");
        }
        if (spec.kind == GroupSpec::Kind::cyclic)
            e.exponent = ((e.exponent % spec.param) + spec.param) % spec.param;
        return e;
    }
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        std::string base = token;
        long long exp = 1;
        if (auto caret = token.find('^'); caret != std::string::npos) {
            base = token.substr(0, caret);
            try {
                exp = std::stoll(token.substr(caret + 1));
            } catch (const std::exception&) {
                throw input_error("bad exponent in token '" + token + "'");
            }
        }
        if (base.size() != 1 || base[0] < 'a' || base[0] >= 'a' + spec.param)
            throw input_error("unknown generator '" + base + "' for " + spec.to_string());
        const int gen = base[0] - 'a' + 1;
        for (long long r = 0; r < std::llabs(exp); ++r) e.letters.push_back(exp < 0 ? -gen : gen);
    }
    e.letters = free_reduce(e.letters);
    return e;
}

std::string format_element(const GroupSpec& spec, const GroupElement& e) {
    if (spec.kind != GroupSpec::Kind::free_group) return std::to_string(e.exponent);
    std::string out;
    for (std::size_t i = 0; i < e.letters.size();) {
        std::size_t j = i;
        while (j < e.letters.size() && e.letters[j] == e.letters[i]) ++j;
        if (!out.empty()) out += ' ';
        out += generator_letter(std::abs(e.letters[i]) - 1);
        const long long exp = static_cast<long long>(j - i) * (e.letters[i] < 0 ? -1 : 1);
        if (exp != 1) out += "^" + std::to_string(exp);
        i = j;
    }
    return out;
}

GraphProduct::GraphProduct(SimpleGraph graph, std::vector<GroupSpec> groups)
    : graph_(std::move(graph)), groups_(std::move(groups)) {
    if (static_cast<int>(groups_.size()) != graph_.vertex_count())
        throw input_error("one vertex group required per vertex");
}

GraphProduct::GraphProduct(SimpleGraph graph, const std::map<std::string, std::string>& labels)
    : graph_(std::move(graph)) {
    groups_.reserve(graph_.vertex_count());
    for (const auto& name : graph_.vertices()) {
        auto it = labels.find(name);
        if (it == labels.end()) throw input_error("missing group label for vertex '" + name + "'");
        groups_.push_back(GroupSpec::parse(it->second));
    }
}

GroupElement GraphProduct::group_multiply(int vertex, const GroupElement& a,
                                          const GroupElement& b) const {
    const GroupSpec& spec = group(vertex);
    GroupElement out;
    if (spec.kind == GroupSpec::Kind::free_group) {
        out.letters = a.letters;
        out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
        out.letters = free_reduce(std::move(out.letters));
    } else if (spec.kind == GroupSpec::Kind::integers) {
        out.exponent = a.exponent + b.exponent;
    } else {
        out.exponent = (a.exponent + b.exponent) % spec.param;
    }
    return out;
}

GroupElement GraphProduct::group_inverse(int vertex, const GroupElement& a) const {
    const GroupSpec& spec = group(vertex);
    GroupElement out;
    if (spec.kind == GroupSpec::Kind::free_group)
        out.letters = free_inverse(a.letters);
    else if (spec.kind == GroupSpec::Kind::integers)
        out.exponent = -a.exponent;
    else
        out.exponent = (spec.param - a.exponent % spec.param) % spec.param;
    return out;
}

bool GraphProduct::is_identity(int vertex, const GroupElement& a) const {
    if (group(vertex).kind == GroupSpec::Kind::free_group) return a.letters.empty();
    return a.exponent == 0;
}

void GraphProduct::validate_syllable(const Syllable& s) const {
    if (s.vertex < 0 || s.vertex >= graph_.vertex_count())
        throw input_error("syllable vertex out of range");
    const GroupSpec& spec = group(s.vertex);
    if (spec.kind == GroupSpec::Kind::free_group) {
        if (s.elem.exponent != 0) throw input_error("free-group syllable carries an exponent");
        for (int x : s.elem.letters)
            if (x == 0 || std::abs(x) > spec.param)
                throw input_error("free letter out of range for " + spec.to_string());
        if (free_reduce(s.elem.letters) != s.elem.letters)
            throw input_error("free word not freely reduced");
    } else if (spec.kind == GroupSpec::Kind::cyclic) {
        if (!s.elem.letters.empty()) throw input_error("cyclic syllable carries letters");
        if (s.elem.exponent < 0 || s.elem.exponent >= spec.param)
            throw input_error("cyclic exponent out of range");
    } else if (!s.elem.letters.empty()) {
        throw input_error("integer syllable carries letters");
    }
    if (is_identity(s.vertex, s.elem)) throw input_error("identity syllable");
}

GPElement GraphProduct::normal_form(std::vector<Syllable> raw) const {
    for (const Syllable& s : raw) validate_syllable(s);

    // Merge loop: any two same-vertex syllables separated only by syllables
    // of adjacent vertices collapse into one; identities disappear.
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < raw.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < raw.size(); ++j) {
                if (raw[j].vertex == raw[i].vertex) {
                    GroupElement prod = group_multiply(raw[i].vertex, raw[i].elem, raw[j].elem);
                    raw.erase(raw.begin() + static_cast<std::ptrdiff_t>(j));
                    if (is_identity(raw[i].vertex, prod))
                        raw.erase(raw.begin() + static_cast<std::ptrdiff_t>(i));
                    else
                        raw[i].elem = std::move(prod);
                    merged = true;
                    break;
                }
                if (!graph_.adjacent(raw[i].vertex, raw[j].vertex)) break;
            }
        }
    }

    GPElement out;
    out.syllables = detail::lex_least_in_commutation_class(
        std::move(raw),
        [this](const Syllable& a, const Syllable& b) {
            return graph_.adjacent(a.vertex, b.vertex);
        },
        [this](const Syllable& a, const Syllable& b) {
            if (a.vertex != b.vertex) return a.vertex < b.vertex;
            return element_less(group(a.vertex), a.elem, b.elem);
        });
    return out;
}

GPElement GraphProduct::multiply(const GPElement& x, const GPElement& y) const {
    std::vector<Syllable> raw = x.syllables;
    raw.insert(raw.end(), y.syllables.begin(), y.syllables.end());
    return normal_form(std::move(raw));
}

GPElement GraphProduct::inverse(const GPElement& x) const {
    std::vector<Syllable> raw;
    raw.reserve(x.syllables.size());
    for (auto it = x.syllables.rbegin(); it != x.syllables.rend(); ++it)
        raw.push_back({it->vertex, group_inverse(it->vertex, it->elem)});
    return normal_form(std::move(raw));
}

std::vector<GPElement> GraphProduct::generators() const {
    std::vector<GPElement> out;
    for (int v = 0; v < graph_.vertex_count(); ++v) {
        const GroupSpec& spec = group(v);
        std::vector<GroupElement> elems;
        if (spec.kind == GroupSpec::Kind::free_group) {
            for (int gen = 1; gen <= spec.param; ++gen) {
                elems.push_back({{gen}, 0});
                elems.push_back({{-gen}, 0});
            }
        } else if (spec.kind == GroupSpec::Kind::integers) {
            elems.push_back({{}, 1});
            elems.push_back({{}, -1});
        } else {
            elems.push_back({{}, 1});
            if (spec.param > 2) elems.push_back({{}, spec.param - 1});
        }
        for (auto& e : elems) out.push_back(GPElement{{Syllable{v, std::move(e)}}});
    }
    return out;
}

std::string GraphProduct::key(const GPElement& x) const {
    std::string out;
    for (const Syllable& s : x.syllables) {
        out += std::to_string(s.vertex);
        out += '[';
        if (group(s.vertex).kind == GroupSpec::Kind::free_group) {
            for (int l : s.elem.letters) {
                out += std::to_string(l);
                out += ',';
            }
        } else {
            out += std::to_string(s.elem.exponent);
        }
        out += ']';
    }
    return out;
}

bool SubgroupSpec::transitive() const {
    const int k = index();
    std::vector<bool> seen(k, false);
    std::deque<int> queue{0};
    seen[0] = true;
    int reached = 1;
    while (!queue.empty()) {
        const int p = queue.front();
        queue.pop_front();
        for (const auto& perm : perms) {
            for (int q : {perm[p], static_cast<int>(std::find(perm.begin(), perm.end(), p) -
                                                    perm.begin())}) {
                if (!seen[q]) {
                    seen[q] = true;
                    ++reached;
                    queue.push_back(q);
                }
            }
        }
    }
    return reached == k;
}

void SubgroupSpec::validate() const {
    if (rank < 1 || rank > 26) throw input_error("subgroup ambient rank out of range");
    if (static_cast<int>(perms.size()) != rank)
        throw input_error("one permutation required per free generator");
    const int k = index();
    if (k < 1) throw input_error("coset count must be >= 1");
    for (const auto& perm : perms) {
        if (static_cast<int>(perm.size()) != k)
            throw input_error("permutations must all have the same degree");
        std::vector<bool> seen(k, false);
        for (int image : perm) {
            if (image < 0 || image >= k || seen[image])
                throw input_error("not a permutation of the cosets");
            seen[image] = true;
        }
    }
    if (!transitive()) throw input_error("coset permutations are not transitive");
}

int SubgroupSpec::act(const std::vector<int>& word, int point) const {
    int p = point;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        const int gen = std::abs(*it) - 1;
        if (gen < 0 || gen >= rank) throw input_error("free letter out of range");
        const auto& perm = perms[gen];
        if (*it > 0) {
            p = perm[p];
        } else {
            p = static_cast<int>(std::find(perm.begin(), perm.end(), p) - perm.begin());
        }
    }
    return p;
}

bool subgroup_contains(const SubgroupSpec& sub, const std::vector<int>& word) {
    return sub.act(free_reduce(word), 0) == 0;
}

std::vector<std::vector<int>> coset_representatives(const SubgroupSpec& sub) {
    sub.validate();
    const int k = sub.index();
    std::vector<std::vector<int>> reps(k);
    std::vector<bool> found(k, false);
    found[0] = true;  // the empty word
    int remaining = k - 1;

    // ShortLex enumeration of freely reduced words; letter order a < a^-1 < ...
    std::vector<int> letters;
    for (int gen = 1; gen <= sub.rank; ++gen) {
        letters.push_back(gen);
        letters.push_back(-gen);
    }
    std::vector<std::vector<int>> frontier{{}};
    while (remaining > 0) {
        std::vector<std::vector<int>> next;
        for (const auto& w : frontier) {
            for (int l : letters) {
                if (!w.empty() && w.back() == -l) continue;
                auto ext = w;
                ext.push_back(l);
                const int p = sub.act(ext, 0);
                if (!found[p]) {
                    found[p] = true;
                    reps[p] = ext;
                    --remaining;
                }
                next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
    }
    return reps;
}

std::vector<std::vector<int>> schreier_generators(const SubgroupSpec& sub) {
    const auto reps = coset_representatives(sub);
    std::vector<std::vector<int>> gens;
    for (int gen = 1; gen <= sub.rank; ++gen) {
        for (int i = 0; i < sub.index(); ++i) {
            const int j = sub.act({gen}, i);
            std::vector<int> word = free_inverse(reps[j]);
            word.push_back(gen);
            word.insert(word.end(), reps[i].begin(), reps[i].end());
            word = free_reduce(std::move(word));
            if (!word.empty()) gens.push_back(std::move(word));
        }
    }
    return gens;
}

namespace {

std::string copy_vertex_name(int coset, const std::string& base) {
    return std::to_string(coset + 1) + ":" + base;
}

}  // namespace

GammaPrime construct_gamma_prime(const SimpleGraph& graph, const std::vector<GroupSpec>& labels,
                                 const std::string& s1, const SubgroupSpec& sub) {
    if (static_cast<int>(labels.size()) != graph.vertex_count())
        throw input_error("one group label required per vertex");
    sub.validate();
    GammaPrime c;
    c.source = graph;
    c.source_groups = labels;
    c.s1 = graph.vertex_index(s1);
    c.sub = sub;
    const GroupSpec& base = labels[c.s1];
    if (base.kind != GroupSpec::Kind::free_group || base.param != sub.rank)
        throw input_error("vertex '" + s1 + "' must carry the free group F" +
                          std::to_string(sub.rank));

    const int k = sub.index();
    const VertexSet star_set = star(graph, s1);
    auto in_star = [&](const std::string& name) {
        return std::binary_search(star_set.begin(), star_set.end(), name);
    };

    std::vector<std::string> names;
    std::vector<std::pair<int, int>> origin;  // (source vertex, coset or -1)
    for (const auto& name : star_set) {
        names.push_back(name);
        origin.emplace_back(graph.vertex_index(name), -1);
    }
    for (int i = 0; i < k; ++i) {
        for (const auto& name : graph.vertices()) {
            if (in_star(name)) continue;
            const std::string copy = copy_vertex_name(i, name);
            if (graph.find_vertex(copy))
                throw input_error("vertex name '" + copy + "' collides with a copy name");
            names.push_back(copy);
            origin.emplace_back(graph.vertex_index(name), i);
        }
    }

    // Edges: star edges survive; copies connect within one coset exactly as in
    // the source; star vertices connect to every copy of their neighbors.
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t a = 0; a < names.size(); ++a) {
        for (std::size_t b = a + 1; b < names.size(); ++b) {
            const auto [va, ia] = origin[a];
            const auto [vb, ib] = origin[b];
            if (!graph.adjacent(va, vb)) continue;
            if (ia == ib || ia == -1 || ib == -1) edges.emplace_back(names[a], names[b]);
        }
    }
    c.produced = SimpleGraph(names, edges);

    c.coset_reps = coset_representatives(sub);
    c.schreier_gens = schreier_generators(sub);

    c.produced_groups.resize(c.produced.vertex_count());
    c.projection.resize(c.produced.vertex_count());
    c.copy_index.resize(c.produced.vertex_count());
    for (std::size_t a = 0; a < names.size(); ++a) {
        const int produced_index = c.produced.vertex_index(names[a]);
        c.projection[produced_index] = origin[a].first;
        c.copy_index[produced_index] = origin[a].second;
        if (origin[a].first == c.s1 && origin[a].second == -1)
            c.produced_groups[produced_index] =
                GroupSpec::free_group(static_cast<int>(c.schreier_gens.size()));
        else
            c.produced_groups[produced_index] = labels[origin[a].first];
    }
    c.s1_produced = c.produced.vertex_index(s1);
    return c;
}

GPElement phi_apply(const GammaPrime& c, const GPElement& x) {
    const GraphProduct cover = c.cover();
    const GraphProduct ambient = c.ambient();
    for (const Syllable& s : x.syllables) cover.validate_syllable(s);

    std::vector<Syllable> raw;
    for (const Syllable& s : x.syllables) {
        const int source_vertex = c.projection.at(s.vertex);
        const int coset = c.copy_index.at(s.vertex);
        if (s.vertex == c.s1_produced) {
            // Subgroup generators expand to their ambient free words.
            std::vector<int> word;
            for (int l : s.elem.letters) {
                const auto& gen = c.schreier_gens.at(std::abs(l) - 1);
                if (l > 0)
                    word.insert(word.end(), gen.begin(), gen.end());
                else {
                    const auto inv = free_inverse(gen);
                    word.insert(word.end(), inv.begin(), inv.end());
                }
            }
            word = free_reduce(std::move(word));
            if (!word.empty()) raw.push_back({c.s1, GroupElement{std::move(word), 0}});
        } else if (coset == -1) {
            raw.push_back({source_vertex, s.elem});
        } else {
            const auto& rep = c.coset_reps.at(coset);
            if (!rep.empty()) raw.push_back({c.s1, GroupElement{free_inverse(rep), 0}});
            raw.push_back({source_vertex, s.elem});
            if (!rep.empty()) raw.push_back({c.s1, GroupElement{rep, 0}});
        }
    }
    return ambient.normal_form(std::move(raw));
}

std::vector<GPElement> ball(const GraphProduct& gp, int radius, const Budget& budget) {
    const std::vector<GPElement> gens = gp.generators();
    std::vector<GPElement> out{GPElement{}};
    std::unordered_set<std::string> seen{gp.key(GPElement{})};
    std::size_t frontier_begin = 0;
    for (int level = 0; level < radius; ++level) {
        const std::size_t frontier_end = out.size();
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            for (const GPElement& g : gens) {
                GPElement y = gp.multiply(out[i], g);
                if (!seen.insert(gp.key(y)).second) continue;
                budget.check_items(static_cast<long long>(out.size()) + 1, "ball enumeration");
                out.push_back(std::move(y));
            }
        }
        frontier_begin = frontier_end;
    }
    return out;
}

BallReport verify_phi_injective_on_ball(const GammaPrime& c, int radius, const Budget& budget) {
    const GraphProduct cover = c.cover();
    const std::vector<GPElement> gens = cover.generators();

    BallReport report;
    std::unordered_set<std::string> seen;
    std::vector<GPElement> frontier{GPElement{}};
    seen.insert(cover.key(GPElement{}));
    report.elements_checked = 1;

    for (int level = 0; level < radius; ++level) {
        std::vector<GPElement> next;
        for (const GPElement& x : frontier) {
            for (const GPElement& g : gens) {
                GPElement y = cover.multiply(x, g);
                if (!seen.insert(cover.key(y)).second) continue;
                if (report.elements_checked >= budget.max_items) {
                    report.complete = false;
                    return report;
                }
                ++report.elements_checked;
                if (phi_apply(c, y).is_identity() && !y.is_identity()) {
                    report.kernel_trivial = false;
                    report.violation = cover.key(y);
                    return report;
                }
                next.push_back(std::move(y));
            }
        }
        frontier = std::move(next);
    }
    return report;
}

int ambient_act(const GammaPrime& c, const GPElement& x, int point) {
    int p = point;
    for (auto it = x.syllables.rbegin(); it != x.syllables.rend(); ++it)
        if (it->vertex == c.s1) p = c.sub.act(it->elem.letters, p);
    return p;
}

CosetActionReport coset_action(const GammaPrime& c) {
    CosetActionReport report;
    report.index = c.sub.index();
    report.transitive = c.sub.transitive();

    const int k = c.sub.index();
    for (int v = 0; v < c.source.vertex_count(); ++v) {
        const GroupSpec& spec = c.source_groups[v];
        for (int gen = 0; gen < spec.generator_count(); ++gen) {
            std::vector<int> perm(k);
            for (int p = 0; p < k; ++p)
                perm[p] = (v == c.s1) ? c.sub.perms[gen][p] : p;
            std::string name = c.source.vertex_name(v) + ":";
            name += (spec.kind == GroupSpec::Kind::free_group)
                        ? std::string(1, generator_letter(gen))
                        : std::string("1");
            report.generator_perms.emplace_back(std::move(name), std::move(perm));
        }
    }

    report.phi_images_stabilize_basepoint = true;
    for (const GPElement& g : c.cover().generators()) {
        if (ambient_act(c, phi_apply(c, g), 0) != 0) {
            report.phi_images_stabilize_basepoint = false;
            break;
        }
    }
    return report;
}

}  // namespace gpfock
