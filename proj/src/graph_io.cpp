#include "gpfock/graph_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "gpfock/budget.hpp"

namespace gpfock {

using nlohmann::json;

LabeledGraph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw input_error("graph JSON needs 'vertices' and 'edges'");
    LabeledGraph out;
    std::vector<std::string> vertices;
    for (const auto& v : j.at("vertices")) {
        if (!v.is_string()) throw input_error("vertex names must be strings");
        vertices.push_back(v.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw input_error("edges must be pairs");
        edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    }
    out.graph = SimpleGraph(vertices, edges);
    if (j.contains("labels")) {
        for (const auto& [key, value] : j.at("labels").items()) {
            out.graph.vertex_index(key);  // reject labels on unknown vertices
            out.labels[key] = value.get<std::string>();
        }
    }
    return out;
}

json graph_to_json(const SimpleGraph& g, const VertexLabels& labels) {
    json j;
    j["vertices"] = g.vertices();
    json edges = json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
    j["edges"] = std::move(edges);
    if (!labels.empty()) j["labels"] = labels;
    return j;
}

namespace {

std::vector<std::string> dot_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    const auto is_word = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
            i += 2;
            while (i + 1 < text.size() && !(text[i] == '*' && text[i + 1] == '/')) ++i;
            i += 2;
        } else if (c == '"') {
            std::string word;
            ++i;
            while (i < text.size() && text[i] != '"') word += text[i++];
            if (i == text.size()) throw input_error("unterminated string in DOT input");
            ++i;
            tokens.push_back(word);
        } else if (is_word(c)) {
            std::string word;
            while (i < text.size() && is_word(text[i])) word += text[i++];
            tokens.push_back(word);
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
            tokens.push_back("--");
            i += 2;
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            throw input_error("directed DOT graphs are not accepted");
        } else if (c == '{' || c == '}' || c == ';' || c == '[' || c == ']' || c == '=' ||
                   c == ',') {
            tokens.push_back(std::string(1, c));
            ++i;
        } else {
            throw input_error(std::string("unexpected character '") + c + "' in DOT input");
        }
    }
    return tokens;
}

}  // namespace

LabeledGraph graph_from_dot(const std::string& text) {
    const std::vector<std::string> tokens = dot_tokens(text);
    std::size_t pos = 0;
    auto expect = [&](const std::string& what) {
        if (pos >= tokens.size() || tokens[pos] != what)
            throw input_error("DOT input: expected '" + what + "'");
        ++pos;
    };
    if (pos < tokens.size() && tokens[pos] == "strict") ++pos;
    if (pos < tokens.size() && tokens[pos] == "digraph")
        throw input_error("directed DOT graphs are not accepted");
    expect("graph");
    if (pos < tokens.size() && tokens[pos] != "{") ++pos;  // optional graph name
    expect("{");

    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
    auto note_vertex = [&](const std::string& name) {
        if (std::find(vertices.begin(), vertices.end(), name) == vertices.end())
            vertices.push_back(name);
    };
    auto skip_attributes = [&]() {
        if (pos < tokens.size() && tokens[pos] == "[") {
            while (pos < tokens.size() && tokens[pos] != "]") ++pos;
            expect("]");
        }
    };

    while (pos < tokens.size() && tokens[pos] != "}") {
        if (tokens[pos] == ";") {
            ++pos;
            continue;
        }
        std::string current = tokens[pos++];
        note_vertex(current);
        skip_attributes();
        while (pos < tokens.size() && tokens[pos] == "--") {
            ++pos;
            if (pos >= tokens.size()) throw input_error("DOT input: dangling edge");
            const std::string next = tokens[pos++];
            note_vertex(next);
            edges.emplace_back(current, next);
            current = next;
            skip_attributes();
        }
    }
    expect("}");
    LabeledGraph out;
    out.graph = SimpleGraph(vertices, edges);  // rejects self-loops and duplicates
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

LabeledGraph load_graph_argument(const std::string& path_or_inline) {
    std::string text = path_or_inline;
    bool is_path = true;
    for (char c : text)
        if (c == '{' || c == '\n') is_path = false;
    if (is_path) {
        const std::string content = read_file(text);
        if (text.ends_with(".dot") || text.ends_with(".gv")) return graph_from_dot(content);
        text = content;
    }
    const std::size_t start = text.find_first_not_of(" \t\r\n");
    if (start == std::string::npos) throw input_error("empty graph input");
    if (text[start] == '{') {
        try {
            return graph_from_json(json::parse(text));
        } catch (const json::parse_error& e) {
            throw input_error(std::string("malformed JSON: ") + e.what());
        }
    }
    return graph_from_dot(text);
}

ConstructionDescriptor construction_from_json(const json& j) {
    if (!j.is_object() || !j.contains("graph"))
        throw input_error("construction JSON needs a 'graph'");
    ConstructionDescriptor out;
    out.input = graph_from_json(j.at("graph"));
    if (j.contains("labels"))
        for (const auto& [key, value] : j.at("labels").items()) {
            out.input.graph.vertex_index(key);
            out.input.labels[key] = value.get<std::string>();
        }
    if (!j.contains("s1")) throw input_error("construction JSON needs 's1'");
    out.s1 = j.at("s1").get<std::string>();

    if (!j.contains("quotient")) throw input_error("construction JSON needs 'quotient'");
    if (!out.input.labels.count(out.s1)) throw input_error("s1 carries no label");
    const GroupSpec base = GroupSpec::parse(out.input.labels.at(out.s1));
    out.sub.rank = base.generator_count();
    out.sub.perms.resize(out.sub.rank);
    int k = j.contains("k") ? j.at("k").get<int>() : -1;
    for (const auto& [gen, images] : j.at("quotient").items()) {
        if (gen.size() != 1 || gen[0] < 'a' || gen[0] >= 'a' + out.sub.rank)
            throw input_error("quotient names unknown generator '" + gen + "'");
        std::vector<int> perm;
        for (const auto& image : images) perm.push_back(image.get<int>() - 1);
        if (k < 0) k = static_cast<int>(perm.size());
        out.sub.perms[gen[0] - 'a'] = std::move(perm);
    }
    for (auto& perm : out.sub.perms)
        if (perm.empty()) throw input_error("quotient must cover every generator");
    if (k != out.sub.index())
        throw input_error("field 'k' disagrees with the quotient permutations");
    out.sub.validate();
    return out;
}

json construction_to_json(const ConstructionDescriptor& c) {
    json j;
    j["graph"] = graph_to_json(c.input.graph);
    j["labels"] = c.input.labels;
    j["s1"] = c.s1;
    j["k"] = c.sub.index();
    json quotient;
    for (int gen = 0; gen < c.sub.rank; ++gen) {
        json images = json::array();
        for (int image : c.sub.perms[gen]) images.push_back(image + 1);
        quotient[std::string(1, static_cast<char>('a' + gen))] = std::move(images);
    }
    j["quotient"] = std::move(quotient);
    return j;
}

}  // namespace gpfock
