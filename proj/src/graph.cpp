#include "topicsim/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "topicsim/errors.hpp"
#include "topicsim/rng.hpp"

namespace topicsim {

Adjacency::Adjacency(std::uint32_t n, std::span<const Edge> edges, bool lattice_only) {
    std::vector<std::uint32_t> deg(n, 0);
    for (const Edge& e : edges) {
        if (lattice_only && e.tag != EdgeTag::lattice)
            continue;
        ++deg[e.u];
        ++deg[e.v];
    }
    offsets_.assign(n + 1, 0);
    for (std::uint32_t u = 0; u < n; ++u)
        offsets_[u + 1] = offsets_[u] + deg[u];
    targets_.resize(offsets_[n]);
    std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges) {
        if (lattice_only && e.tag != EdgeTag::lattice)
            continue;
        targets_[cursor[e.u]++] = e.v;
        targets_[cursor[e.v]++] = e.u;
    }
    for (std::uint32_t u = 0; u < n; ++u)
        std::sort(targets_.begin() + offsets_[u], targets_.begin() + offsets_[u + 1]);
}

bool Adjacency::has_edge(std::uint32_t u, std::uint32_t v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Network::Network(WsParams params, std::vector<Edge> edges)
    : params_(params), edges_(std::move(edges)),
      adj_(params.n, edges_, false), lattice_adj_(params.n, edges_, true) {
    for (const Edge& e : edges_)
        if (e.tag == EdgeTag::rewired)
            ++rewired_count_;
}

namespace {

void validate_ws(std::uint32_t n, std::uint32_t k, double p) {
    if (k < 2)
        throw validation_error("ws: k must be >= 2");
    if (k % 2 != 0)
        throw validation_error("ws: k must be even");
    if (k >= n)
        throw validation_error("ws: need n > k");
    if (!(p >= 0.0 && p <= 1.0))
        throw validation_error("ws: p_rewire must lie in [0,1]");
}

} // namespace

Network build_ws(std::uint32_t n, std::uint32_t k, double p_rewire, std::uint64_t seed) {
    validate_ws(n, k, p_rewire);

    const std::uint32_t half = k / 2;
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * half);
    std::vector<std::vector<std::uint32_t>> nbr(n);
    for (auto& l : nbr)
        l.reserve(k + 2);

    for (std::uint32_t u = 0; u < n; ++u) {
        for (std::uint32_t off = 1; off <= half; ++off) {
            const std::uint32_t v = (u + off) % n;
            edges.push_back({u, v, EdgeTag::lattice});
            nbr[u].push_back(v);
            nbr[v].push_back(u);
        }
    }

    auto adjacent = [&](std::uint32_t a, std::uint32_t b) {
        const auto& l = nbr[a];
        return std::find(l.begin(), l.end(), b) != l.end();
    };
    auto drop = [&](std::uint32_t a, std::uint32_t b) {
        auto& l = nbr[a];
        auto it = std::find(l.begin(), l.end(), b);
        *it = l.back();
        l.pop_back();
    };

    Rng rng(seed);
    for (Edge& e : edges) {
        const bool rewire = uniform01(rng) < p_rewire;
        if (!rewire)
            continue;
        const std::uint32_t u = e.u;
        // Candidates: everything except u and its current neighborhood
        // (which contains the old endpoint).
        if (nbr[u].size() + 1 >= n)
            continue;
        std::uint32_t w;
        do {
            w = static_cast<std::uint32_t>(uniform_below(rng, n));
        } while (w == u || adjacent(u, w));
        drop(u, e.v);
        drop(e.v, u);
        nbr[u].push_back(w);
        nbr[w].push_back(u);
        e.v = w;
        e.tag = EdgeTag::rewired;
    }

    return Network(WsParams{n, k, p_rewire, seed}, std::move(edges));
}

Network build_ws(const WsParams& p) {
    return build_ws(p.n, p.k, p.p_rewire, p.seed);
}

Network lattice_view(const Network& net) {
    std::vector<Edge> kept;
    kept.reserve(net.edge_count() - net.rewired_count());
    for (const Edge& e : net.edges())
        if (e.tag == EdgeTag::lattice)
            kept.push_back(e);
    return Network(net.params(), std::move(kept));
}

void save_network(const Network& net, std::ostream& out,
                  std::span<const std::string> extra_header) {
    const WsParams& p = net.params();
    char buf[160];
    std::snprintf(buf, sizeof buf, "# ws n=%u k=%u p=%.17g seed=%" PRIu64 "\n",
                  p.n, p.k, p.p_rewire, p.seed);
    out << buf;
    for (const std::string& line : extra_header)
        out << "# " << line << "\n";
    for (const Edge& e : net.edges()) {
        std::snprintf(buf, sizeof buf, "%u %u %c\n", e.u, e.v,
                      e.tag == EdgeTag::lattice ? 'L' : 'R');
        out << buf;
    }
}

namespace {

// Parses "key=value" out of the ws header line.
std::string_view header_field(std::string_view line, std::string_view key) {
    const std::string pat = std::string(key) + "=";
    const auto pos = line.find(pat);
    if (pos == std::string_view::npos)
        throw io_error("graph header: missing field " + std::string(key));
    const auto start = pos + pat.size();
    auto end = line.find(' ', start);
    if (end == std::string_view::npos)
        end = line.size();
    return line.substr(start, end - start);
}

} // namespace

Network load_network(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ws ", 0) != 0)
        throw io_error("graph file: expected '# ws ...' header");

    WsParams p;
    auto parse_u32 = [&](std::string_view s, std::uint32_t& out_v) {
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out_v);
        if (ec != std::errc())
            throw io_error("graph header: bad integer");
        (void)ptr;
    };
    parse_u32(header_field(line, "n"), p.n);
    parse_u32(header_field(line, "k"), p.k);
    p.p_rewire = std::stod(std::string(header_field(line, "p")));
    p.seed = std::stoull(std::string(header_field(line, "seed")));

    std::vector<Edge> edges;
    std::uint64_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        Edge e{};
        char tag = 0;
        if (std::sscanf(line.c_str(), "%u %u %c", &e.u, &e.v, &tag) != 3 ||
            (tag != 'L' && tag != 'R') || e.u >= p.n || e.v >= p.n || e.u == e.v)
            throw io_error("graph file: bad edge at line " + std::to_string(lineno));
        e.tag = tag == 'L' ? EdgeTag::lattice : EdgeTag::rewired;
        edges.push_back(e);
    }
    return Network(p, std::move(edges));
}

} // namespace topicsim
