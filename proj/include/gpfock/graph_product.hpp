#ifndef GPFOCK_GRAPH_PRODUCT_HPP
#define GPFOCK_GRAPH_PRODUCT_HPP

#include <map>
#include <string>
#include <vector>

#include "gpfock/budget.hpp"
#include "gpfock/graph.hpp"

namespace gpfock {

// Vertex group of a graph product: a free group of given rank, the integers,
// or a finite cyclic group.
struct GroupSpec {
    enum class Kind { free_group, integers, cyclic };

    Kind kind = Kind::free_group;
    int param = 1;  // free rank, or cyclic modulus; unused for integers

    static GroupSpec free_group(int rank);
    static GroupSpec integers();
    static GroupSpec cyclic(int modulus);

    // "F2" / "Z" / "Z/4"
    static GroupSpec parse(const std::string& text);
    std::string to_string() const;

    int generator_count() const { return kind == Kind::free_group ? param : 1; }

    bool operator==(const GroupSpec&) const = default;
};

// Element payload, interpreted against a GroupSpec: a freely reduced word
// over +/-(generator index + 1) for free groups, an exponent otherwise.
struct GroupElement {
    std::vector<int> letters;
    long long exponent = 0;

    bool operator==(const GroupElement&) const = default;
};

std::vector<int> free_reduce(std::vector<int> letters);
std::vector<int> free_inverse(const std::vector<int>& letters);

GroupElement parse_element(const GroupSpec& spec, const std::string& text);
std::string format_element(const GroupSpec& spec, const GroupElement& e);

struct Syllable {
    int vertex = 0;
    GroupElement elem;

    bool operator==(const Syllable&) const = default;
};

// Element of a graph product in canonical reduced form: no commuting shuffle
// brings two syllables of the same vertex together, and the sequence is the
// ShortLex-least among its shuffles.
struct GPElement {
    std::vector<Syllable> syllables;

    bool is_identity() const { return syllables.empty(); }
    bool operator==(const GPElement&) const = default;
};

// Ambient data of a graph product: the graph plus one group per vertex.
class GraphProduct {
public:
    GraphProduct(SimpleGraph graph, std::vector<GroupSpec> groups);
    GraphProduct(SimpleGraph graph, const std::map<std::string, std::string>& labels);

    const SimpleGraph& graph() const { return graph_; }
    const GroupSpec& group(int vertex) const { return groups_.at(vertex); }
    const std::vector<GroupSpec>& groups() const { return groups_; }

    bool operator==(const GraphProduct&) const = default;

    // Canonical form of a raw syllable sequence: merges same-vertex syllables
    // reachable through commuting shuffles, drops identities, then orders the
    // result. Raw syllables must be nontrivial and over known vertices.
    GPElement normal_form(std::vector<Syllable> raw) const;

    GPElement multiply(const GPElement& x, const GPElement& y) const;
    GPElement inverse(const GPElement& x) const;

    GroupElement group_multiply(int vertex, const GroupElement& a, const GroupElement& b) const;
    GroupElement group_inverse(int vertex, const GroupElement& a) const;
    bool is_identity(int vertex, const GroupElement& a) const;
    void validate_syllable(const Syllable& s) const;

    // Standard generators and their inverses, one GPElement per generator,
    // vertices in sorted order. For Z/2 the generator is its own inverse and
    // appears once.
    std::vector<GPElement> generators() const;

    // Deterministic serialization, usable as a hash key.
    std::string key(const GPElement& x) const;

private:
    SimpleGraph graph_;
    std::vector<GroupSpec> groups_;
};

// Finite-index subgroup of a free group, described by the permutation action
// of the generators on the cosets [k], with the subgroup as the stabilizer of
// point 0. Words act on the left: a word maps a point by applying its letters
// right to left.
struct SubgroupSpec {
    int rank = 1;                         // ambient free rank
    std::vector<std::vector<int>> perms;  // one permutation of {0..k-1} per generator

    int index() const { return perms.empty() ? 1 : static_cast<int>(perms[0].size()); }
    bool transitive() const;
    void validate() const;

    // Image of a point under a freely written word.
    int act(const std::vector<int>& word, int point) const;
};

// Word lies in the subgroup iff its permutation image fixes the basepoint.
bool subgroup_contains(const SubgroupSpec& sub, const std::vector<int>& word);

// ShortLex-least coset representatives: reps[i] is the least word moving the
// basepoint to i; reps[0] is empty.
std::vector<std::vector<int>> coset_representatives(const SubgroupSpec& sub);

// Nontrivial Schreier generators of the subgroup w.r.t. the ShortLex
// transversal, as freely reduced ambient words. Their count is the free rank
// of the subgroup.
std::vector<std::vector<int>> schreier_generators(const SubgroupSpec& sub);

// Finite-index rewrite of a graph product: a chosen vertex's group is shrunk
// to a finite-index subgroup, and every vertex outside its star is cloned
// once per coset. The produced graph product embeds into the source one with
// index k, and rigidity of the source graph passes to the produced graph.
struct GammaPrime {
    SimpleGraph source;
    std::vector<GroupSpec> source_groups;
    int s1 = 0;
    SubgroupSpec sub;

    SimpleGraph produced;
    std::vector<GroupSpec> produced_groups;
    std::vector<std::vector<int>> coset_reps;
    std::vector<std::vector<int>> schreier_gens;
    std::vector<int> projection;  // produced vertex -> source vertex
    std::vector<int> copy_index;  // produced vertex -> coset, -1 on the star
    int s1_produced = 0;

    GraphProduct ambient() const { return GraphProduct(source, source_groups); }
    GraphProduct cover() const { return GraphProduct(produced, produced_groups); }
};

GammaPrime construct_gamma_prime(const SimpleGraph& graph,
                                 const std::vector<GroupSpec>& labels,
                                 const std::string& s1, const SubgroupSpec& sub);

// The injective homomorphism from the produced graph product into the source
// one: identity on star vertices (subgroup generators expand to their ambient
// words), conjugation by the matching coset representative on cloned vertices.
GPElement phi_apply(const GammaPrime& c, const GPElement& x);

// All distinct elements expressible as products of at most `radius` standard
// generators, identity included, in BFS discovery order.
std::vector<GPElement> ball(const GraphProduct& gp, int radius,
                            const Budget& budget = Budget::from_env());

struct BallReport {
    long long elements_checked = 0;
    bool kernel_trivial = true;
    bool complete = true;
    std::string violation;  // key of an offending element, empty if none
};

// Enumerates the ball of the given radius in the produced graph product over
// its standard generators, and checks that only the identity maps to the
// identity.
BallReport verify_phi_injective_on_ball(const GammaPrime& c, int radius,
                                        const Budget& budget = Budget::from_env());

struct CosetActionReport {
    // Ambient generator name ("vertex:letter") -> permutation of the cosets.
    std::vector<std::pair<std::string, std::vector<int>>> generator_perms;
    bool transitive = false;
    int index = 0;
    bool phi_images_stabilize_basepoint = false;
};

CosetActionReport coset_action(const GammaPrime& c);

// Action of an ambient graph-product element on the cosets; only syllables at
// the rewritten vertex act.
int ambient_act(const GammaPrime& c, const GPElement& x, int point);

}  // namespace gpfock

#endif
