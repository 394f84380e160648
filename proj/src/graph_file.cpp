#include "drshift/graph_file.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace drshift {

namespace {

struct Scanner {
    const std::string& s;
    int line;
    std::size_t pos = 0;

    int column() const { return static_cast<int>(pos) + 1; }
    bool done() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }
    void skip_spaces() {
        while (!done() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    std::string token() {
        skip_spaces();
        std::size_t start = pos;
        while (!done() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '{' &&
               s[pos] != '}' && s[pos] != ',')
            ++pos;
        return s.substr(start, pos - start);
    }
    void expect(char c, const std::string& what) {
        skip_spaces();
        if (done() || s[pos] != c) throw parse_error(line, column(), what);
        ++pos;
    }
};

} // namespace

Ultragraph parse_graph_text(const std::string& text) {
    ExplicitSpec spec;
    std::map<std::string, VertexId> vertex_ids;

    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        Scanner scan{raw, line_no};
        scan.skip_spaces();
        if (scan.done() || scan.peek() == '#') continue;
        std::string keyword = scan.token();
        if (keyword == "vertex") {
            std::string name = scan.token();
            if (name.empty()) throw parse_error(line_no, scan.column(), "expected vertex name");
            if (vertex_ids.count(name))
                throw parse_error(line_no, scan.column(), "duplicate vertex '" + name + "'");
            vertex_ids[name] = static_cast<VertexId>(spec.vertex_names.size());
            spec.vertex_names.push_back(name);
        } else if (keyword == "edge") {
            ExplicitSpec::Edge edge;
            edge.name = scan.token();
            if (edge.name.empty()) throw parse_error(line_no, scan.column(), "expected edge name");
            std::string src = scan.token();
            auto src_it = vertex_ids.find(src);
            if (src_it == vertex_ids.end())
                throw parse_error(line_no, scan.column(), "unknown source vertex '" + src + "'");
            edge.source = src_it->second;
            scan.expect('-', "expected '->'");
            scan.expect('>', "expected '->'");
            scan.expect('{', "expected '{'");
            for (;;) {
                std::string v = scan.token();
                if (v.empty()) throw parse_error(line_no, scan.column(), "expected range vertex");
                auto it = vertex_ids.find(v);
                if (it == vertex_ids.end())
                    throw parse_error(line_no, scan.column(), "unknown range vertex '" + v + "'");
                edge.range.push_back(it->second);
                scan.skip_spaces();
                if (!scan.done() && scan.peek() == ',') {
                    ++scan.pos;
                    continue;
                }
                break;
            }
            scan.expect('}', "expected '}'");
            spec.edges.push_back(std::move(edge));
        } else {
            throw parse_error(line_no, 1, "expected 'vertex' or 'edge', got '" + keyword + "'");
        }
    }
    if (spec.vertex_names.empty()) throw parse_error(line_no + 1, 1, "no vertices declared");
    if (spec.edges.empty()) throw parse_error(line_no + 1, 1, "no edges declared");
    return make_explicit(std::move(spec));
}

Ultragraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph_text(buf.str());
}

} // namespace drshift
