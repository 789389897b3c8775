#include "gdmorph/io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "gdmorph/errors.hpp"

namespace gdmorph {

namespace {

std::string strip(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& token, const std::string& path, int line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw input_error(path + ":" + std::to_string(line_no) + ": expected a number, got '" +
                          token + "'");
    }
}

}  // namespace

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw input_error("cannot open edge list '" + path + "'");
    }
    std::vector<std::pair<int, int>> edges;
    int max_index = -1;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = strip(line);
        if (line.empty()) continue;
        std::istringstream ss(line);
        int a = 0, b = 0;
        std::string extra;
        if (!(ss >> a >> b) || (ss >> extra)) {
            throw input_error(path + ":" + std::to_string(line_no) +
                              ": expected 'i j', got '" + line + "'");
        }
        if (a < 0 || b < 0) {
            throw input_error(path + ":" + std::to_string(line_no) + ": negative node index");
        }
        edges.emplace_back(a, b);
        max_index = std::max({max_index, a, b});
    }
    if (edges.empty()) {
        throw input_error("edge list '" + path + "' contains no edges");
    }
    try {
        return Graph(max_index + 1, std::move(edges));
    } catch (const input_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw input_error("cannot write edge list '" + path + "'");
    }
    out << "# " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";
    for (const auto& [a, b] : g.edges()) {
        out << a << ' ' << b << '\n';
    }
}

Drawing load_coords_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw input_error("cannot open coordinate file '" + path + "'");
    }
    Drawing d;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip(line);
        if (line.empty()) continue;
        if (!header_seen) {
            header_seen = true;
            if (line == "x,y") continue;  // header optional on input
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw input_error(path + ":" + std::to_string(line_no) + ": expected 'x,y' row");
        }
        d.pts.push_back({parse_double(strip(line.substr(0, comma)), path, line_no),
                         parse_double(strip(line.substr(comma + 1)), path, line_no)});
    }
    if (d.pts.empty()) {
        throw input_error("coordinate file '" + path + "' contains no rows");
    }
    return d;
}

void save_coords_csv(const Drawing& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw input_error("cannot write coordinate file '" + path + "'");
    }
    out.precision(std::numeric_limits<double>::max_digits10);
    out << "x,y\n";
    for (const auto& p : d.pts) {
        out << p.x << ',' << p.y << '\n';
    }
}

}  // namespace gdmorph
