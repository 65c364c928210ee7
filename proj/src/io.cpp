#include "selfcomm/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace selfcomm {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

bool is_comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

long long parse_int(const std::string& tok, int line_no, const std::string& what) {
    try {
        size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, "expected " + what + ", got '" + tok + "'");
    }
}

Rational parse_rational_at(const std::string& tok, int line_no, const std::string& what) {
    try {
        return parse_rational(tok);
    } catch (const std::exception&) {
        throw ParseError(line_no, "expected " + what + ", got '" + tok + "'");
    }
}

// Reads the next meaningful line; returns false at EOF.
bool next_line(std::istream& in, std::string& line, int& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!is_comment_or_blank(line)) return true;
    }
    return false;
}

int expect_member(long long v, long long n, int line_no) {
    if (v < 0 || v >= n) throw ParseError(line_no, "member id " + std::to_string(v) +
                                                       " out of range [0," + std::to_string(n) +
                                                       ")");
    return static_cast<int>(v);
}

}  // namespace

RankedSystem read_ranked(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!next_line(in, line, line_no)) throw ParseError(1, "missing header");
    auto head = tokens_of(line);
    if (head.size() != 2 || head[0] != "ranked")
        throw ParseError(line_no, "expected header 'ranked <n>'");
    long long n = parse_int(head[1], line_no, "member count");
    if (n < 0) throw ParseError(line_no, "negative member count");

    RankedSystem sys;
    sys.n = static_cast<int>(n);
    sys.rankings.resize(n);
    std::vector<char> defined(n, 0);
    while (next_line(in, line, line_no)) {
        auto toks = tokens_of(line);
        if (toks.empty() || toks[0].back() != ':')
            throw ParseError(line_no, "expected '<i>: <j1> <j2> ...'");
        int i = expect_member(parse_int(toks[0].substr(0, toks[0].size() - 1), line_no,
                                        "member id"),
                              n, line_no);
        if (defined[i]) throw ParseError(line_no, "duplicate ranking for member " +
                                                      std::to_string(i));
        defined[i] = 1;
        for (size_t k = 1; k < toks.size(); ++k)
            sys.rankings[i].push_back(expect_member(parse_int(toks[k], line_no, "member id"),
                                                    n, line_no));
    }
    try {
        sys.validate();
    } catch (const std::exception& e) {
        throw ParseError(line_no, e.what());
    }
    return sys;
}

void write_ranked(std::ostream& out, const RankedSystem& system,
                  const std::optional<BlobMap>& blob_map) {
    out << "ranked " << system.n << "\n";
    if (blob_map)
        out << "# blobmap " << blob_map->k << " " << blob_map->n_original << "\n";
    for (int i = 0; i < system.n; ++i) {
        out << i << ":";
        for (MemberId j : system.rankings[i]) out << " " << j;
        out << "\n";
    }
}

std::optional<BlobMap> read_blob_map_comment(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        auto toks = tokens_of(line);
        if (toks.size() == 4 && toks[0] == "#" && toks[1] == "blobmap") {
            BlobMap map;
            map.k = static_cast<int>(parse_int(toks[2], 0, "blob size"));
            map.n_original = static_cast<int>(parse_int(toks[3], 0, "original member count"));
            return map;
        }
    }
    return std::nullopt;
}

WeightedSystem read_weighted(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!next_line(in, line, line_no)) throw ParseError(1, "missing header");
    auto head = tokens_of(line);
    if (head.size() != 2 || head[0] != "weighted")
        throw ParseError(line_no, "expected header 'weighted <n>'");
    long long n = parse_int(head[1], line_no, "member count");
    if (n < 0) throw ParseError(line_no, "negative member count");

    WeightedSystem sys;
    sys.n = static_cast<int>(n);
    sys.rows.resize(n);
    while (next_line(in, line, line_no)) {
        auto toks = tokens_of(line);
        if (toks.size() != 3) throw ParseError(line_no, "expected '<i> <j> <w>'");
        int i = expect_member(parse_int(toks[0], line_no, "member id"), n, line_no);
        int j = expect_member(parse_int(toks[1], line_no, "member id"), n, line_no);
        Rational w = parse_rational_at(toks[2], line_no, "weight");
        if (w < 0 || w > 1) throw ParseError(line_no, "weight outside [0,1]");
        if (sys.weight(i, j) != 0) throw ParseError(line_no, "duplicate weight entry");
        sys.set_weight(i, j, w);
    }
    return sys;
}

void write_weighted(std::ostream& out, const WeightedSystem& system) {
    out << "weighted " << system.n << "\n";
    for (int i = 0; i < system.n; ++i)
        for (const auto& [j, w] : system.rows[i])
            if (w != 0) out << i << " " << j << " " << format_rational_decimal(w) << "\n";
}

FacetedSystem read_faceted(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!next_line(in, line, line_no)) throw ParseError(1, "missing header");
    auto head = tokens_of(line);
    if (head.size() != 3 || head[0] != "faceted")
        throw ParseError(line_no, "expected header 'faceted <n> <f>'");
    long long n = parse_int(head[1], line_no, "member count");
    long long f = parse_int(head[2], line_no, "facet bound");
    if (n < 0 || f < 1) throw ParseError(line_no, "bad faceted header");

    FacetedSystem sys;
    sys.n = static_cast<int>(n);
    sys.f = static_cast<int>(f);
    sys.rankings.resize(n);
    while (next_line(in, line, line_no)) {
        auto toks = tokens_of(line);
        if (toks.empty() || toks[0].back() != ':')
            throw ParseError(line_no, "expected '<i>/<facet>: <j1> ...'");
        std::string key = toks[0].substr(0, toks[0].size() - 1);
        auto slash = key.find('/');
        if (slash == std::string::npos) throw ParseError(line_no, "expected '<i>/<facet>:'");
        int i = expect_member(parse_int(key.substr(0, slash), line_no, "member id"), n, line_no);
        long long facet = parse_int(key.substr(slash + 1), line_no, "facet index");
        if (facet < 1 || facet > f) throw ParseError(line_no, "facet index outside [1,f]");
        auto& facets = sys.rankings[i];
        if (static_cast<long long>(facets.size()) < facet) facets.resize(facet);
        if (!facets[facet - 1].empty())
            throw ParseError(line_no, "duplicate facet definition");
        for (size_t k = 1; k < toks.size(); ++k)
            facets[facet - 1].push_back(
                expect_member(parse_int(toks[k], line_no, "member id"), n, line_no));
    }
    for (auto& facets : sys.rankings)
        if (facets.empty()) facets.resize(1);  // unmentioned member: one empty facet
    try {
        sys.validate();
    } catch (const std::exception& e) {
        throw ParseError(line_no, e.what());
    }
    return sys;
}

void write_faceted(std::ostream& out, const FacetedSystem& system) {
    out << "faceted " << system.n << " " << system.f << "\n";
    for (int i = 0; i < system.n; ++i)
        for (size_t q = 0; q < system.rankings[i].size(); ++q) {
            out << i << "/" << q + 1 << ":";
            for (MemberId j : system.rankings[i][q]) out << " " << j;
            out << "\n";
        }
}

SocialGraph read_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!next_line(in, line, line_no)) throw ParseError(1, "missing header");
    auto head = tokens_of(line);
    if ((head.size() != 3 && head.size() != 4) || head[0] != "graph")
        throw ParseError(line_no, "expected header 'graph <n> directed|undirected [selfloops]'");
    long long n = parse_int(head[1], line_no, "vertex count");
    SocialGraph g;
    g.n = static_cast<int>(n);
    g.out.resize(n);
    if (head[2] == "directed") {
        g.directed = true;
    } else if (head[2] == "undirected") {
        g.directed = false;
    } else {
        throw ParseError(line_no, "expected 'directed' or 'undirected'");
    }
    bool selfloops = false;
    if (head.size() == 4) {
        if (head[3] != "selfloops") throw ParseError(line_no, "unknown header flag '" + head[3] + "'");
        selfloops = true;
    }
    while (next_line(in, line, line_no)) {
        auto toks = tokens_of(line);
        if (toks.size() != 2 && toks.size() != 3)
            throw ParseError(line_no, "expected '<i> <j> [w]'");
        int i = expect_member(parse_int(toks[0], line_no, "vertex id"), n, line_no);
        int j = expect_member(parse_int(toks[1], line_no, "vertex id"), n, line_no);
        Rational w = toks.size() == 3 ? parse_rational_at(toks[2], line_no, "weight") : Rational(1);
        try {
            g.add_edge(i, j, w);
        } catch (const std::exception& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (selfloops)
        for (int i = 0; i < g.n; ++i)
            if (!g.has_selfloop(i)) g.add_edge(i, i, Rational(1));
    return g;
}

void write_graph(std::ostream& out, const SocialGraph& graph, bool selfloops_flag) {
    out << "graph " << graph.n << " " << (graph.directed ? "directed" : "undirected");
    if (selfloops_flag) out << " selfloops";
    out << "\n";
    for (int i = 0; i < graph.n; ++i)
        for (const auto& [j, w] : graph.out[i]) {
            if (!graph.directed && j < i) continue;  // one line per undirected edge
            if (selfloops_flag && i == j) continue;
            out << i << " " << j;
            if (w != 1) out << " " << format_rational_decimal(w);
            out << "\n";
        }
}

CommunityFile read_communities(std::istream& in) {
    std::string line;
    int line_no = 0;
    CommunityFile file;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) {
            auto toks = tokens_of(line);
            if (toks.size() >= 2 && toks[0] == "#" && toks[1] == "planted") file.planted = true;
            continue;
        }
        auto toks = tokens_of(line);
        if (!have_header) {
            if (toks.size() != 4 || toks[0] != "communities")
                throw ParseError(line_no,
                                 "expected header 'communities theta=<v> alpha=<v> beta=<v>'");
            auto value_of = [&](const std::string& tok, const std::string& key) {
                if (tok.rfind(key + "=", 0) != 0)
                    throw ParseError(line_no, "expected '" + key + "=<value>'");
                return parse_rational_at(tok.substr(key.size() + 1), line_no, key);
            };
            file.params.theta = value_of(toks[1], "theta");
            file.params.alpha = value_of(toks[2], "alpha");
            file.params.beta = value_of(toks[3], "beta");
            have_header = true;
            continue;
        }
        MemberSet S;
        for (const auto& tok : toks)
            S.push_back(static_cast<int>(parse_int(tok, line_no, "member id")));
        if (!std::is_sorted(S.begin(), S.end()))
            throw ParseError(line_no, "community members must be sorted ascending");
        file.communities.push_back(std::move(S));
    }
    if (!have_header) throw ParseError(line_no ? line_no : 1, "missing header");
    return file;
}

void write_community_list(std::ostream& out, const CommunityParams& params,
                          const std::vector<MemberSet>& communities, bool planted) {
    out << "communities theta=" << format_rational(params.theta)
        << " alpha=" << format_rational(params.alpha)
        << " beta=" << format_rational(params.beta) << "\n";
    if (planted) out << "# planted\n";
    std::vector<MemberSet> sorted = communities;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& S : sorted) {
        for (size_t i = 0; i < S.size(); ++i) out << (i ? " " : "") << S[i];
        out << "\n";
    }
}

void write_communities(std::ostream& out, const CommunityParams& params,
                       const CommunitySet& communities, bool planted) {
    std::vector<MemberSet> list;
    list.reserve(communities.size());
    for (const auto& [members, tag] : communities.entries) list.push_back(members);
    write_community_list(out, params, list, planted);
}

namespace {

template <class Reader>
auto load_file(const std::string& path, Reader&& reader) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return reader(in);
}

}  // namespace

RankedSystem load_ranked(const std::string& path) {
    return load_file(path, [](std::istream& in) { return read_ranked(in); });
}
WeightedSystem load_weighted(const std::string& path) {
    return load_file(path, [](std::istream& in) { return read_weighted(in); });
}
FacetedSystem load_faceted(const std::string& path) {
    return load_file(path, [](std::istream& in) { return read_faceted(in); });
}
SocialGraph load_graph(const std::string& path) {
    return load_file(path, [](std::istream& in) { return read_graph(in); });
}

}  // namespace selfcomm
