#include "lowrank/io.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace lowrank {

namespace {

std::string next_line(std::istream& is) {
    std::string line;
    while (std::getline(is, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        return line.substr(first, last - first + 1);
    }
    fail(Errc::ParseError, "unexpected end of input");
}

// Splits `word key=value ...`, checking the leading word.
std::map<std::string, std::string> parse_tagged(const std::string& line, const std::string& word) {
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    require(head == word, Errc::ParseError, "expected '" + word + "' line, got '" + line + "'");
    std::map<std::string, std::string> kv;
    std::string tok;
    while (ls >> tok) {
        const auto eq = tok.find('=');
        require(eq != std::string::npos, Errc::ParseError, "bad token '" + tok + "'");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return kv;
}

const std::string& get(const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto it = kv.find(key);
    require(it != kv.end(), Errc::ParseError, "missing '" + key + "='");
    return it->second;
}

std::size_t to_size(const std::string& s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(!s.empty() && ec == std::errc() && ptr == s.data() + s.size(), Errc::ParseError,
            "bad number '" + s + "'");
    return v;
}

std::vector<Fel> read_elements(std::istream& is, const Field& f, std::size_t count) {
    std::vector<Fel> out(count);
    std::string tok;
    for (std::size_t i = 0; i < count; ++i) {
        require(static_cast<bool>(is >> tok), Errc::ParseError, "expected " + std::to_string(count) + " elements");
        out[i] = f.parse(tok);
    }
    return out;
}

void write_entries(std::ostream& os, const DenseTensor& t) {
    const std::size_t row = t.dims().back();
    for (std::size_t i = 0; i < t.size(); ++i) {
        os << t.field().format(t.entries()[i]) << ((i + 1) % row == 0 ? '\n' : ' ');
    }
}

LowRankTensor read_lowrank_body(std::istream& is, const Field& f, const std::string& line);

DenseTensor read_tensor_body(std::istream& is, const Field& f, const std::string& line) {
    const auto kv = parse_tagged(line, "tensor");
    Dims dims = parse_dims(get(kv, "dims"));
    return DenseTensor(f, dims, read_elements(is, f, volume(dims)));
}

}  // namespace

std::string format_dims(const Dims& dims) {
    std::string s;
    for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "x" : "") + std::to_string(dims[i]);
    return s;
}

Dims parse_dims(const std::string& text) {
    Dims dims;
    std::size_t start = 0;
    while (true) {
        const auto x = text.find('x', start);
        dims.push_back(to_size(text.substr(start, x == std::string::npos ? std::string::npos : x - start)));
        if (x == std::string::npos) break;
        start = x + 1;
    }
    for (std::size_t n : dims) require(n > 0, Errc::ParseError, "dims must be positive");
    return dims;
}

void write_tensor(std::ostream& os, const DenseTensor& t) {
    os << t.field().header() << '\n' << "tensor dims=" << format_dims(t.dims()) << '\n';
    write_entries(os, t);
}

DenseTensor read_tensor(std::istream& is) {
    const Field f = Field::parse_header(next_line(is));
    const std::string line = next_line(is);
    if (line.rfind("lowrank", 0) == 0) return expand(read_lowrank_body(is, f, line));
    return read_tensor_body(is, f, line);
}

void write_lowrank(std::ostream& os, const LowRankTensor& t) {
    os << t.field().header() << '\n'
       << "lowrank dims=" << format_dims(t.dims()) << " terms=" << t.terms().size() << '\n';
    for (const auto& term : t.terms()) {
        for (const auto& v : term.factors()) {
            for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << t.field().format(v[i]);
            os << '\n';
        }
    }
}

LowRankTensor read_lowrank(std::istream& is) {
    const Field f = Field::parse_header(next_line(is));
    return read_lowrank_body(is, f, next_line(is));
}

namespace {

LowRankTensor read_lowrank_body(std::istream& is, const Field& f, const std::string& line) {
    const auto kv = parse_tagged(line, "lowrank");
    const Dims dims = parse_dims(get(kv, "dims"));
    const std::size_t terms = to_size(get(kv, "terms"));
    LowRankTensor t(f, dims);
    for (std::size_t i = 0; i < terms; ++i) {
        std::vector<std::vector<Fel>> factors;
        for (std::size_t n : dims) factors.push_back(read_elements(is, f, n));
        t.add_term(std::move(factors));
    }
    return t;
}

}  // namespace

void write_measurements(std::ostream& os, const MeasurementSet& h) {
    os << h.field.header() << '\n'
       << "measurements family=" << family_name(h.family) << " count=" << h.size()
       << " dims=" << format_dims(h.dims) << '\n';
    for (std::size_t i = 0; i < h.size(); ++i) {
        os << "meta k=" << h.meta[i].k << " l=";
        for (std::size_t j = 0; j < h.meta[i].l.size(); ++j) os << (j ? "," : "") << h.meta[i].l[j];
        os << '\n' << "tensor dims=" << format_dims(h.dims) << '\n';
        write_entries(os, h.dense(i));
    }
}

MeasurementSet read_measurements(std::istream& is) {
    const Field f = Field::parse_header(next_line(is));
    const auto kv = parse_tagged(next_line(is), "measurements");
    MeasurementSet h{f, parse_dims(get(kv, "dims")), parse_family(get(kv, "family")), {}, {}};
    const std::size_t count = to_size(get(kv, "count"));
    for (std::size_t i = 0; i < count; ++i) {
        const auto mkv = parse_tagged(next_line(is), "meta");
        MeasurementMeta meta;
        meta.k = to_size(get(mkv, "k"));
        const std::string& l = get(mkv, "l");
        std::size_t start = 0;
        while (start < l.size()) {
            const auto comma = l.find(',', start);
            meta.l.push_back(to_size(l.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        DenseTensor t = read_tensor_body(is, f, next_line(is));
        require(t.dims() == h.dims, Errc::ParseError, "measurement dims disagree with the set");
        h.items.emplace_back(std::move(t));
        h.meta.push_back(std::move(meta));
    }
    return h;
}

void write_syndromes(std::ostream& os, const SyndromeFile& s) {
    os << s.field.header() << '\n'
       << "syndromes family=" << family_name(s.family) << " r=" << s.r << " dims=" << format_dims(s.dims);
    if (s.sim != Simulation::None) os << " sim=" << simulation_name(s.sim) << " ext=" << s.ext;
    os << '\n';
    for (Fel v : s.values) os << s.field.format(v) << '\n';
}

SyndromeFile read_syndromes(std::istream& is) {
    const Field f = Field::parse_header(next_line(is));
    const auto kv = parse_tagged(next_line(is), "syndromes");
    SyndromeFile s{f, parse_family(get(kv, "family")), to_size(get(kv, "r")), parse_dims(get(kv, "dims")),
                   Simulation::None, 1, {}};
    if (kv.count("sim")) s.sim = parse_simulation(kv.at("sim"));
    if (kv.count("ext")) s.ext = static_cast<unsigned>(to_size(kv.at("ext")));
    std::string tok;
    while (is >> tok) s.values.push_back(f.parse(tok));
    return s;
}

}  // namespace lowrank
