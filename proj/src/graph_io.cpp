#include <fstream>
#include <sstream>

#include "json.hpp"
#include "kvis/graph.hpp"

namespace kvis {

using nlohmann::json;

std::string graph_to_json(const Graph& g) {
    json j;
    j["n"] = g.n;
    json es = json::array();
    for (auto [u, v] : g.edges) es.push_back({u, v});
    j["edges"] = std::move(es);
    if (g.labels) {
        json ls = json::array();
        for (auto [r, c] : *g.labels) ls.push_back({r, c});
        j["labels"] = std::move(ls);
    }
    return j.dump();
}

Graph graph_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("bad graph JSON: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("edges")) throw IoError("graph JSON needs \"n\" and \"edges\"");
    int n = j["n"].get<int>();
    std::vector<Edge> es;
    for (auto& e : j["edges"]) es.emplace_back(e[0].get<int>(), e[1].get<int>());
    Graph g(n, std::move(es));
    if (j.contains("labels")) {
        std::vector<std::pair<int, int>> ls;
        for (auto& l : j["labels"]) ls.emplace_back(l[0].get<int>(), l[1].get<int>());
        if (int(ls.size()) != n) throw IoError("label count must equal n");
        g.labels = std::move(ls);
    }
    if (!is_connected(g)) throw StructuralError("graph is disconnected");
    return g;
}

std::string graph_to_edgelist(const Graph& g) {
    std::ostringstream out;
    for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
    return out.str();
}

Graph graph_from_edgelist(const std::string& text) {
    std::istringstream in(text);
    std::vector<Edge> es;
    int n = 0;
    int u, v;
    while (in >> u >> v) {
        es.emplace_back(u, v);
        n = std::max({n, u + 1, v + 1});
    }
    Graph g(n, std::move(es));
    if (!is_connected(g)) throw StructuralError("graph is disconnected");
    return g;
}

std::string graph_to_dot(const Graph& g) {
    std::ostringstream out;
    out << "graph {\n";
    for (auto [u, v] : g.edges) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && text[pos] == '{') return graph_from_json(text);
    return graph_from_edgelist(text);
}

void save_graph_file(const Graph& g, const std::string& path, const std::string& format) {
    std::string payload;
    if (format == "json")
        payload = graph_to_json(g);
    else if (format == "edgelist")
        payload = graph_to_edgelist(g);
    else if (format == "dot")
        payload = graph_to_dot(g);
    else
        throw ParameterError("unknown export format: " + format);
    if (path == "-") {
        fputs(payload.c_str(), stdout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << payload;
}

} // namespace kvis
