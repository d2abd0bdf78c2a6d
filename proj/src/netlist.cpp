#include "otabench/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace otabench {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

bool is_number_start(const std::string& t) {
    if (t.empty()) return false;
    char c = t[0];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
}

}  // namespace

// =============================================================================
// parse_value
// =============================================================================

double parse_value(const std::string& token) {
    if (token.empty()) throw ParseError("empty value", 0, 0);

    std::size_t i = 0;
    const std::size_t n = token.size();
    if (token[i] == '+' || token[i] == '-') ++i;
    std::size_t digits = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(token[i]))) ++i, ++digits;
    if (i < n && token[i] == '.') {
        ++i;
        while (i < n && std::isdigit(static_cast<unsigned char>(token[i]))) ++i, ++digits;
    }
    if (digits == 0)
        throw ParseError("malformed number '" + token + "'", 0, i);
    // exponent only when 'e' is followed by digits (else it is a unit letter)
    if (i < n && (token[i] == 'e' || token[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (token[j] == '+' || token[j] == '-')) ++j;
        if (j < n && std::isdigit(static_cast<unsigned char>(token[j]))) {
            ++j;
            while (j < n && std::isdigit(static_cast<unsigned char>(token[j]))) ++j;
            i = j;
        }
    }

    double mantissa = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + i, mantissa);
    if (ec != std::errc() || ptr != token.data() + i)
        throw ParseError("malformed number '" + token + "'", 0,
                         static_cast<std::size_t>(ptr - token.data()));

    // remainder must be letters: optional scale suffix, then ignored unit letters
    std::string tail;
    for (std::size_t k = i; k < n; ++k) {
        if (!std::isalpha(static_cast<unsigned char>(token[k])))
            throw ParseError("malformed number '" + token + "'", 0, k);
        tail += static_cast<char>(std::tolower(static_cast<unsigned char>(token[k])));
    }

    double scale = 1.0;
    if (tail.rfind("meg", 0) == 0) {
        scale = 1e6;
    } else if (!tail.empty()) {
        switch (tail[0]) {
            case 'f': scale = 1e-15; break;
            case 'p': scale = 1e-12; break;
            case 'n': scale = 1e-9; break;
            case 'u': scale = 1e-6; break;
            case 'm': scale = 1e-3; break;
            case 'k': scale = 1e3; break;
            case 'g': scale = 1e9; break;
            case 't': scale = 1e12; break;
            default: break;  // plain unit letters, no scaling
        }
    }
    return mantissa * scale;
}

// =============================================================================
// SourceSpec / FreqGrid
// =============================================================================

double SourceSpec::value_at(double t) const {
    if (std::holds_alternative<PulseSpec>(transient)) {
        const auto& p = std::get<PulseSpec>(transient);
        double tt = t - p.delay;
        if (tt < 0.0) return p.v1;
        if (p.period > 0.0) tt = std::fmod(tt, p.period);
        if (tt < p.rise)
            return p.rise > 0.0 ? p.v1 + (p.v2 - p.v1) * tt / p.rise : p.v2;
        tt -= p.rise;
        if (tt < p.width) return p.v2;
        tt -= p.width;
        if (tt < p.fall)
            return p.fall > 0.0 ? p.v2 + (p.v1 - p.v2) * tt / p.fall : p.v1;
        return p.v1;
    }
    if (std::holds_alternative<SinSpec>(transient)) {
        const auto& s = std::get<SinSpec>(transient);
        return s.offset + s.amplitude * std::sin(2.0 * std::numbers::pi * s.freq * t);
    }
    return dc;
}

std::vector<double> FreqGrid::frequencies() const {
    std::vector<double> f;
    if (scale == SweepScale::Decade) {
        const double upper = fstop * (1.0 + 1e-9);
        for (int k = 0;; ++k) {
            const double fk = fstart * std::pow(10.0, double(k) / points);
            if (fk > upper) break;
            f.push_back(fk);
        }
    } else {
        if (points == 1) {
            f.push_back(fstart);
        } else {
            for (int k = 0; k < points; ++k)
                f.push_back(fstart + (fstop - fstart) * double(k) / (points - 1));
        }
    }
    return f;
}

// =============================================================================
// Circuit queries
// =============================================================================

int Circuit::vsource_count() const {
    int n = 0;
    for (const auto& d : devices)
        if (std::holds_alternative<VSource>(d)) ++n;
    return n;
}

int Circuit::find_node(const std::string& name) const {
    const std::string key = to_lower(name);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] == key) return static_cast<int>(i);
    return -1;
}

int Circuit::find_device(const std::string& name) const {
    const std::string key = to_lower(name);
    for (std::size_t i = 0; i < devices.size(); ++i)
        if (device_name(devices[i]) == key) return static_cast<int>(i);
    return -1;
}

bool Circuit::operator==(const Circuit& o) const {
    return title == o.title && nodes == o.nodes && devices == o.devices &&
           models == o.models && analyses == o.analyses &&
           temp_kelvin == o.temp_kelvin;
}

std::string device_name(const Device& device) {
    return std::visit([](const auto& d) { return d.name; }, device);
}

// =============================================================================
// Parser
// =============================================================================

namespace {

struct Line {
    std::string text;
    int number = 0;  // 1-based
};

std::vector<std::string> tokenize(const std::string& line) {
    std::string prepared;
    prepared.reserve(line.size());
    for (char c : line) {
        if (c == '(' || c == ')' || c == ',')
            prepared += ' ';
        else
            prepared += c;
    }
    std::istringstream in(prepared);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(to_lower(t));
    return toks;
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    Circuit run() {
        split_lines();
        for (const auto& line : logical_) {
            if (ended_) break;
            parse_line(line);
        }
        post_validate();
        return elaborate(std::move(circuit_));
    }

private:
    [[noreturn]] void fail(int line, const std::string& msg) { throw ParseError(msg, line); }

    void split_lines() {
        std::vector<Line> raw;
        int number = 0;
        std::istringstream in(text_);
        std::string s;
        while (std::getline(in, s)) {
            ++number;
            if (!s.empty() && s.back() == '\r') s.pop_back();
            raw.push_back({s, number});
        }
        if (raw.empty()) throw ParseError("empty netlist", 1);
        circuit_.title = raw[0].text;

        // drop comments/blanks, then fold '+' continuations
        for (std::size_t i = 1; i < raw.size(); ++i) {
            std::string t = raw[i].text;
            const auto first = t.find_first_not_of(" \t");
            if (first == std::string::npos) continue;
            if (t[first] == '*') continue;
            if (t[first] == '+') {
                if (logical_.empty()) fail(raw[i].number, "continuation with no previous line");
                logical_.back().text += " " + t.substr(first + 1);
                continue;
            }
            logical_.push_back({t, raw[i].number});
        }
    }

    int node(const std::string& name) {
        const std::string key = to_lower(name);
        const int found = circuit_.find_node(key);
        if (found >= 0) return found;
        circuit_.nodes.push_back(key);
        return static_cast<int>(circuit_.nodes.size()) - 1;
    }

    double value(const std::string& token, int line) {
        try {
            return parse_value(token);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line, e.offset);
        }
    }

    void register_device(const std::string& name, int line) {
        if (!device_lines_.emplace(name, line).second)
            fail(line, "duplicate device name '" + name + "'");
    }

    void parse_line(const Line& line) {
        auto toks = tokenize(line.text);
        if (toks.empty()) return;
        const std::string& head = toks[0];
        if (head[0] == '.') {
            parse_directive(toks, line.number);
            return;
        }
        switch (head[0]) {
            case 'r': parse_resistor(toks, line.number); break;
            case 'c': parse_capacitor(toks, line.number); break;
            case 'v': parse_source(toks, line.number, /*voltage=*/true); break;
            case 'i': parse_source(toks, line.number, /*voltage=*/false); break;
            case 'm': parse_mosfet(toks, line.number); break;
            default:
                fail(line.number, "unknown device type '" + std::string(1, head[0]) + "'");
        }
    }

    void parse_resistor(const std::vector<std::string>& t, int line) {
        if (t.size() < 4) fail(line, "resistor needs: name n+ n- value");
        Resistor r;
        r.name = t[0];
        register_device(r.name, line);
        r.np = node(t[1]);
        r.nn = node(t[2]);
        r.ohms = value(t[3], line);
        if (!(r.ohms > 0)) fail(line, "resistance must be > 0");
        for (std::size_t i = 4; i < t.size(); ++i) {
            auto [key, val] = key_value(t[i], line);
            if (key == "tc")
                r.tc = val;
            else
                fail(line, "unknown resistor parameter '" + key + "'");
        }
        circuit_.devices.emplace_back(std::move(r));
    }

    void parse_capacitor(const std::vector<std::string>& t, int line) {
        if (t.size() < 4) fail(line, "capacitor needs: name n+ n- value");
        Capacitor c;
        c.name = t[0];
        register_device(c.name, line);
        c.np = node(t[1]);
        c.nn = node(t[2]);
        c.farads = value(t[3], line);
        if (!(c.farads > 0)) fail(line, "capacitance must be > 0");
        for (std::size_t i = 4; i < t.size(); ++i) {
            auto [key, val] = key_value(t[i], line);
            if (key == "ic")
                c.ic = val;
            else
                fail(line, "unknown capacitor parameter '" + key + "'");
        }
        circuit_.devices.emplace_back(std::move(c));
    }

    void parse_source(const std::vector<std::string>& t, int line, bool voltage) {
        if (t.size() < 3) fail(line, "source needs: name n+ n- [spec]");
        std::string name = t[0];
        register_device(name, line);
        const int np = node(t[1]);
        const int nn = node(t[2]);
        SourceSpec spec;
        std::size_t i = 3;
        bool first = true;
        while (i < t.size()) {
            const std::string& tok = t[i];
            if (tok == "dc") {
                if (i + 1 >= t.size()) fail(line, "dc needs a value");
                spec.dc = value(t[++i], line);
            } else if (tok == "ac") {
                if (i + 1 >= t.size()) fail(line, "ac needs a magnitude");
                spec.ac_mag = value(t[++i], line);
                if (i + 1 < t.size() && is_number_start(t[i + 1]))
                    spec.ac_phase_deg = value(t[++i], line);
            } else if (tok == "pulse") {
                if (i + 7 >= t.size()) fail(line, "pulse needs 7 values");
                PulseSpec p;
                p.v1 = value(t[i + 1], line);
                p.v2 = value(t[i + 2], line);
                p.delay = value(t[i + 3], line);
                p.rise = value(t[i + 4], line);
                p.fall = value(t[i + 5], line);
                p.width = value(t[i + 6], line);
                p.period = value(t[i + 7], line);
                spec.transient = p;
                i += 7;
            } else if (tok == "sin") {
                if (i + 3 >= t.size()) fail(line, "sin needs 3 values");
                SinSpec s;
                s.offset = value(t[i + 1], line);
                s.amplitude = value(t[i + 2], line);
                s.freq = value(t[i + 3], line);
                spec.transient = s;
                i += 3;
            } else if (first && is_number_start(tok)) {
                spec.dc = value(tok, line);
            } else {
                fail(line, "unexpected token '" + tok + "' in source");
            }
            first = false;
            ++i;
        }
        if (voltage) {
            VSource v{std::move(name), np, nn, spec};
            circuit_.devices.emplace_back(std::move(v));
        } else {
            ISource s{std::move(name), np, nn, spec};
            circuit_.devices.emplace_back(std::move(s));
        }
    }

    void parse_mosfet(const std::vector<std::string>& t, int line) {
        if (t.size() < 6) fail(line, "mosfet needs: name d g s b model w=... l=...");
        Mosfet m;
        m.name = t[0];
        register_device(m.name, line);
        m.d = node(t[1]);
        m.g = node(t[2]);
        m.s = node(t[3]);
        m.b = node(t[4]);
        m.model = t[5];
        bool have_w = false, have_l = false;
        for (std::size_t i = 6; i < t.size(); ++i) {
            auto [key, val] = key_value(t[i], line);
            if (key == "w") {
                m.geom.w = val;
                have_w = true;
            } else if (key == "l") {
                m.geom.l = val;
                have_l = true;
            } else if (key == "cgs") {
                m.cgs = val;
            } else if (key == "cgd") {
                m.cgd = val;
            } else if (key == "cdb") {
                m.cdb = val;
            } else if (key == "cbs") {
                m.cbs = val;
            } else {
                fail(line, "unknown mosfet parameter '" + key + "'");
            }
        }
        if (!have_w || !have_l) fail(line, "mosfet requires W= and L=");
        if (!(m.geom.w > 0) || !(m.geom.l > 0)) fail(line, "mosfet W and L must be > 0");
        if (m.cgs < 0 || m.cgd < 0 || m.cdb < 0 || m.cbs < 0)
            fail(line, "mosfet capacitances must be >= 0");
        mosfet_lines_.emplace_back(circuit_.devices.size(), line);
        circuit_.devices.emplace_back(std::move(m));
    }

    std::pair<std::string, double> key_value(const std::string& tok, int line) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= tok.size())
            fail(line, "expected key=value, got '" + tok + "'");
        return {tok.substr(0, eq), value(tok.substr(eq + 1), line)};
    }

    void parse_directive(const std::vector<std::string>& t, int line) {
        const std::string& d = t[0];
        if (d == ".end") {
            ended_ = true;
        } else if (d == ".op") {
            circuit_.analyses.emplace_back(OpDirective{});
        } else if (d == ".model") {
            parse_model(t, line);
        } else if (d == ".dc") {
            parse_dc(t, line);
        } else if (d == ".ac") {
            AcDirective ac;
            ac.grid = parse_grid(t, 1, line);
            circuit_.analyses.emplace_back(ac);
        } else if (d == ".tran") {
            if (t.size() < 3) fail(line, ".tran needs tstep tstop");
            TranDirective tr;
            tr.tstep = value(t[1], line);
            tr.tstop = value(t[2], line);
            if (!(tr.tstep > 0)) fail(line, "tstep must be > 0");
            if (!(tr.tstop >= tr.tstep)) fail(line, "tstop must be >= tstep");
            circuit_.analyses.emplace_back(tr);
        } else if (d == ".noise") {
            parse_noise(t, line);
        } else if (d == ".temp") {
            if (t.size() < 2) fail(line, ".temp needs at least one value");
            TempDirective td;
            for (std::size_t i = 1; i < t.size(); ++i) {
                const double c = value(t[i], line);
                if (c <= -273.15) fail(line, "temperature below absolute zero");
                td.celsius.push_back(c);
            }
            circuit_.analyses.emplace_back(std::move(td));
        } else if (d == ".options") {
            parse_options(t, line);
        } else {
            fail(line, "unknown directive '" + d + "'");
        }
    }

    void parse_model(const std::vector<std::string>& t, int line) {
        if (t.size() < 3) fail(line, ".model needs: name nmos|pmos [params]");
        MosModelCard card;
        card.name = t[1];
        if (t[2] == "nmos") {
            card.polarity = MosPolarity::Nmos;
        } else if (t[2] == "pmos") {
            card.polarity = MosPolarity::Pmos;
            card.vt0 = -0.4;
        } else {
            fail(line, "model type must be NMOS or PMOS");
        }
        for (std::size_t i = 3; i < t.size(); ++i) {
            auto [key, val] = key_value(t[i], line);
            if (key == "vto") card.vt0 = val;
            else if (key == "kp") card.kp = val;
            else if (key == "gamma") card.gamma = val;
            else if (key == "phi") card.phi = val;
            else if (key == "lambda") card.lambda = val;
            else if (key == "kf") card.kf = val;
            else if (key == "af") card.af = val;
            else if (key == "cox") card.cox = val;
            else if (key == "is") card.is_bulk = val;
            else if (key == "tnom") card.tnom = val + 273.15;  // given in Celsius
            else if (key == "tcv") card.tc_vth = val;
            else if (key == "muexp") card.mu_exp = val;
            else fail(line, "unknown model parameter '" + key + "'");
        }
        try {
            card.validate();
        } catch (const DomainError& e) {
            fail(line, e.what());
        }
        if (!circuit_.models.emplace(card.name, card).second)
            fail(line, "duplicate model '" + card.name + "'");
    }

    void parse_dc(const std::vector<std::string>& t, int line) {
        if (t.size() != 5 && t.size() != 9)
            fail(line, ".dc needs: source start stop step [source2 start2 stop2 step2]");
        DcSweepDirective dc;
        dc.source = t[1];
        dc.start = value(t[2], line);
        dc.stop = value(t[3], line);
        dc.step = value(t[4], line);
        check_sweep(dc.start, dc.stop, dc.step, line);
        if (t.size() == 9) {
            dc.source2 = t[5];
            dc.start2 = value(t[6], line);
            dc.stop2 = value(t[7], line);
            dc.step2 = value(t[8], line);
            check_sweep(dc.start2, dc.stop2, dc.step2, line);
        }
        sweep_lines_.emplace_back(circuit_.analyses.size(), line);
        circuit_.analyses.emplace_back(std::move(dc));
    }

    void check_sweep(double start, double stop, double step, int line) {
        if (step == 0.0) fail(line, "sweep step must be nonzero");
        if ((stop - start) * step < 0.0)
            fail(line, "sweep step sign inconsistent with start/stop");
    }

    FreqGrid parse_grid(const std::vector<std::string>& t, std::size_t i, int line) {
        if (i + 3 >= t.size()) fail(line, "frequency sweep needs: dec|lin n fstart fstop");
        FreqGrid g;
        if (t[i] == "dec") g.scale = SweepScale::Decade;
        else if (t[i] == "lin") g.scale = SweepScale::Linear;
        else fail(line, "sweep scale must be dec or lin");
        g.points = static_cast<int>(value(t[i + 1], line));
        g.fstart = value(t[i + 2], line);
        g.fstop = value(t[i + 3], line);
        if (g.points < 1) fail(line, "sweep needs at least one point");
        if (!(g.fstart > 0)) fail(line, "fstart must be > 0");
        if (!(g.fstop > g.fstart)) fail(line, "fstop must be > fstart");
        return g;
    }

    void parse_noise(const std::vector<std::string>& t, int line) {
        // .noise v(out) <input-source> dec|lin n fstart fstop
        if (t.size() < 2) fail(line, ".noise needs: v(node) source sweep");
        NoiseDirective nd;
        std::size_t i = 1;
        if (t[i] == "v") {
            if (i + 1 >= t.size()) fail(line, ".noise output node missing");
            nd.output_node = t[++i];
        } else if (t[i].rfind("v(", 0) == 0) {
            nd.output_node = t[i].substr(2, t[i].size() - (t[i].back() == ')' ? 3 : 2));
        } else {
            nd.output_node = t[i];
        }
        ++i;
        if (i >= t.size()) fail(line, ".noise input source missing");
        nd.input_source = t[i++];
        nd.grid = parse_grid(t, i, line);
        noise_lines_.emplace_back(circuit_.analyses.size(), line);
        circuit_.analyses.emplace_back(std::move(nd));
    }

    void parse_options(const std::vector<std::string>& t, int line) {
        for (std::size_t i = 1; i < t.size(); ++i) {
            auto [key, val] = key_value(t[i], line);
            auto& o = circuit_.options;
            if (!(val > 0)) fail(line, "option '" + key + "' must be > 0");
            if (key == "abstol") o.abstol = val;
            else if (key == "reltol") o.reltol = val;
            else if (key == "vntol") o.vntol = val;
            else if (key == "maxiter") o.maxiter = static_cast<int>(val);
            else if (key == "gmin") o.gmin = val;
            else if (key == "gminsteps") o.gmin_steps = static_cast<int>(val);
            else if (key == "srcsteps") o.src_steps = static_cast<int>(val);
            else if (key == "damping") o.damping = val;
            else fail(line, "unknown option '" + key + "'");
        }
    }

    void post_validate() {
        for (auto [index, line] : mosfet_lines_) {
            const auto& m = std::get<Mosfet>(circuit_.devices[index]);
            if (!circuit_.models.count(m.model))
                fail(line, "mosfet '" + m.name + "' references unknown model '" + m.model + "'");
        }
        for (auto [index, line] : sweep_lines_) {
            const auto& dc = std::get<DcSweepDirective>(circuit_.analyses[index]);
            check_source_ref(dc.source, line);
            if (dc.source2) check_source_ref(*dc.source2, line);
        }
        for (auto [index, line] : noise_lines_) {
            const auto& nd = std::get<NoiseDirective>(circuit_.analyses[index]);
            if (circuit_.find_node(nd.output_node) < 0)
                fail(line, ".noise output node '" + nd.output_node + "' does not exist");
            check_source_ref(nd.input_source, line);
        }
    }

    void check_source_ref(const std::string& name, int line) {
        const int idx = circuit_.find_device(name);
        if (idx < 0) fail(line, "unknown source '" + name + "'");
        const auto& dev = circuit_.devices[idx];
        if (!std::holds_alternative<VSource>(dev) && !std::holds_alternative<ISource>(dev))
            fail(line, "'" + name + "' is not a V or I source");
    }

    const std::string& text_;
    Circuit circuit_;
    std::vector<Line> logical_;
    bool ended_ = false;
    std::unordered_map<std::string, int> device_lines_;
    std::vector<std::pair<std::size_t, int>> mosfet_lines_;
    std::vector<std::pair<std::size_t, int>> sweep_lines_;
    std::vector<std::pair<std::size_t, int>> noise_lines_;
};

// Union-find over node indices for the DC-path-to-ground check.
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Circuit parse_netlist(const std::string& text) {
    if (text.empty()) throw ParseError("empty netlist", 1);
    Parser parser(text);
    return parser.run();
}

Circuit elaborate(Circuit circuit) {
    circuit.warnings.clear();

    // branch slots: node_count + k for the k-th voltage source
    int k = 0;
    for (auto& dev : circuit.devices) {
        if (auto* v = std::get_if<VSource>(&dev)) v->branch = circuit.node_count() + k++;
    }

    const int n = circuit.node_count();
    std::vector<int> terminal_count(n, 0);
    Dsu dsu(n);
    for (const auto& dev : circuit.devices) {
        if (const auto* r = std::get_if<Resistor>(&dev)) {
            ++terminal_count[r->np];
            ++terminal_count[r->nn];
            dsu.unite(r->np, r->nn);
        } else if (const auto* c = std::get_if<Capacitor>(&dev)) {
            ++terminal_count[c->np];
            ++terminal_count[c->nn];
            // open at DC: no conduction edge
        } else if (const auto* v = std::get_if<VSource>(&dev)) {
            ++terminal_count[v->np];
            ++terminal_count[v->nn];
            dsu.unite(v->np, v->nn);
        } else if (const auto* i = std::get_if<ISource>(&dev)) {
            ++terminal_count[i->np];
            ++terminal_count[i->nn];
            // infinite DC impedance: no conduction edge
        } else if (const auto* m = std::get_if<Mosfet>(&dev)) {
            ++terminal_count[m->d];
            ++terminal_count[m->g];
            ++terminal_count[m->s];
            ++terminal_count[m->b];
            dsu.unite(m->d, m->s);  // channel
            dsu.unite(m->b, m->s);  // bulk junction (gmin/diode path)
        }
    }
    for (int i = 1; i < n; ++i) {
        if (dsu.find(i) != dsu.find(0))
            throw TopologyError("node '" + circuit.nodes[i] + "' has no DC path to ground");
        if (terminal_count[i] < 2)
            circuit.warnings.push_back("node '" + circuit.nodes[i] +
                                       "' has only one device terminal");
    }
    return circuit;
}

// =============================================================================
// unparse
// =============================================================================

namespace {

std::string source_spec_text(const SourceSpec& s) {
    std::string out = " dc " + format_double(s.dc);
    if (s.ac_mag != 0.0 || s.ac_phase_deg != 0.0)
        out += " ac " + format_double(s.ac_mag) + " " + format_double(s.ac_phase_deg);
    if (const auto* p = std::get_if<PulseSpec>(&s.transient)) {
        out += " pulse(" + format_double(p->v1) + " " + format_double(p->v2) + " " +
               format_double(p->delay) + " " + format_double(p->rise) + " " +
               format_double(p->fall) + " " + format_double(p->width) + " " +
               format_double(p->period) + ")";
    } else if (const auto* sn = std::get_if<SinSpec>(&s.transient)) {
        out += " sin(" + format_double(sn->offset) + " " + format_double(sn->amplitude) +
               " " + format_double(sn->freq) + ")";
    }
    return out;
}

std::string grid_text(const FreqGrid& g) {
    return std::string(g.scale == SweepScale::Decade ? "dec " : "lin ") +
           std::to_string(g.points) + " " + format_double(g.fstart) + " " +
           format_double(g.fstop);
}

}  // namespace

std::string unparse(const Circuit& circuit) {
    std::ostringstream out;
    out << circuit.title << "\n";
    for (const auto& [name, card] : circuit.models) {
        out << ".model " << name << (card.polarity == MosPolarity::Nmos ? " nmos" : " pmos")
            << " (vto=" << format_double(card.vt0) << " kp=" << format_double(card.kp)
            << " gamma=" << format_double(card.gamma) << " phi=" << format_double(card.phi)
            << " lambda=" << format_double(card.lambda) << " kf=" << format_double(card.kf)
            << " af=" << format_double(card.af) << " cox=" << format_double(card.cox)
            << " is=" << format_double(card.is_bulk)
            << " tnom=" << format_double(card.tnom - 273.15)
            << " tcv=" << format_double(card.tc_vth)
            << " muexp=" << format_double(card.mu_exp) << ")\n";
    }
    for (const auto& dev : circuit.devices) {
        if (const auto* r = std::get_if<Resistor>(&dev)) {
            out << r->name << " " << circuit.nodes[r->np] << " " << circuit.nodes[r->nn]
                << " " << format_double(r->ohms);
            if (r->tc != 0.0) out << " tc=" << format_double(r->tc);
            out << "\n";
        } else if (const auto* c = std::get_if<Capacitor>(&dev)) {
            out << c->name << " " << circuit.nodes[c->np] << " " << circuit.nodes[c->nn]
                << " " << format_double(c->farads);
            if (c->ic) out << " ic=" << format_double(*c->ic);
            out << "\n";
        } else if (const auto* v = std::get_if<VSource>(&dev)) {
            out << v->name << " " << circuit.nodes[v->np] << " " << circuit.nodes[v->nn]
                << source_spec_text(v->spec) << "\n";
        } else if (const auto* i = std::get_if<ISource>(&dev)) {
            out << i->name << " " << circuit.nodes[i->np] << " " << circuit.nodes[i->nn]
                << source_spec_text(i->spec) << "\n";
        } else if (const auto* m = std::get_if<Mosfet>(&dev)) {
            out << m->name << " " << circuit.nodes[m->d] << " " << circuit.nodes[m->g]
                << " " << circuit.nodes[m->s] << " " << circuit.nodes[m->b] << " "
                << m->model << " w=" << format_double(m->geom.w)
                << " l=" << format_double(m->geom.l);
            if (m->cgs != 0.0) out << " cgs=" << format_double(m->cgs);
            if (m->cgd != 0.0) out << " cgd=" << format_double(m->cgd);
            if (m->cdb != 0.0) out << " cdb=" << format_double(m->cdb);
            if (m->cbs != 0.0) out << " cbs=" << format_double(m->cbs);
            out << "\n";
        }
    }
    for (const auto& an : circuit.analyses) {
        if (std::holds_alternative<OpDirective>(an)) {
            out << ".op\n";
        } else if (const auto* dc = std::get_if<DcSweepDirective>(&an)) {
            out << ".dc " << dc->source << " " << format_double(dc->start) << " "
                << format_double(dc->stop) << " " << format_double(dc->step);
            if (dc->source2)
                out << " " << *dc->source2 << " " << format_double(dc->start2) << " "
                    << format_double(dc->stop2) << " " << format_double(dc->step2);
            out << "\n";
        } else if (const auto* ac = std::get_if<AcDirective>(&an)) {
            out << ".ac " << grid_text(ac->grid) << "\n";
        } else if (const auto* tr = std::get_if<TranDirective>(&an)) {
            out << ".tran " << format_double(tr->tstep) << " " << format_double(tr->tstop)
                << "\n";
        } else if (const auto* nd = std::get_if<NoiseDirective>(&an)) {
            out << ".noise v(" << nd->output_node << ") " << nd->input_source << " "
                << grid_text(nd->grid) << "\n";
        } else if (const auto* td = std::get_if<TempDirective>(&an)) {
            out << ".temp";
            for (double c : td->celsius) out << " " << format_double(c);
            out << "\n";
        }
    }
    out << ".end\n";
    return out.str();
}

}  // namespace otabench
