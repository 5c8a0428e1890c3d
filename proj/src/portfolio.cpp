#include <moepap/parallel.hpp>
#include <moepap/portfolio.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace moepap {

SolutionSet restructure_union(std::span<const SolutionSet> sets)
{
    if (sets.empty())
        throw ContractViolation("restructure: no input sets");
    Population merged;
    std::set<std::vector<double>> seen;
    Index m = -1;
    for (const SolutionSet& set : sets) {
        for (const Individual& ind : set) {
            if (m < 0)
                m = ind.f.size();
            else if (ind.f.size() != m)
                throw ContractViolation("restructure: sets have different objective counts");
            if (seen.emplace(ind.f.data(), ind.f.data() + ind.f.size()).second)
                merged.push_back(ind);
        }
    }
    return nondominated_filter(merged);
}

SolutionSet restructure(std::span<const SolutionSet> sets, std::size_t cap)
{
    SolutionSet front = restructure_union(sets);
    if (front.size() > cap)
        front = crowding_truncate(front, cap);
    return front;
}

double PapRunResult::best_member_metric() const
{
    double best = -std::numeric_limits<double>::infinity();
    for (double v : member_metric)
        if (!std::isnan(v))
            best = std::max(best, v);
    return best;
}

PapRunResult select_output(std::vector<std::optional<RunResult>> members, const HvContext& ctx)
{
    PapRunResult r;
    r.members = std::move(members);
    std::vector<SolutionSet> sets;
    for (const auto& member : r.members) {
        if (member) {
            r.member_metric.push_back(ihvr(member->solutions, ctx));
            sets.push_back(member->solutions);
        }
        else {
            r.member_metric.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    if (sets.empty())
        throw ConfigError("run_pap: every member run failed");

    r.restructured = restructure_union(sets);
    r.restructure_metric = ihvr(r.restructured, ctx);
    r.chosen = restructure_source;
    r.output_metric = r.restructure_metric;
    for (std::size_t i = 0; i < r.member_metric.size(); ++i) {
        if (!std::isnan(r.member_metric[i]) && r.member_metric[i] > r.output_metric) {
            r.chosen = static_cast<long>(i);
            r.output_metric = r.member_metric[i];
        }
    }
    r.output = r.chosen == restructure_source ? r.restructured : r.members[std::size_t(r.chosen)]->solutions;
    return r;
}

PapRunResult run_pap(const Portfolio& portfolio, const Problem& problem, RunBudget budget, std::uint64_t seed,
                     const HvContext& ctx, std::size_t workers)
{
    if (portfolio.members.empty() || portfolio.members.size() > max_portfolio_size)
        throw ConfigError("run_pap: portfolio must have 1 to 10 members");
    const std::size_t k = portfolio.members.size();
    std::vector<std::optional<RunResult>> results(k);
    std::vector<std::string> errors(k);
    parallel_for(k, workers, [&](std::size_t i) {
        try {
            results[i] = run(portfolio.members[i], problem, budget, derive_seed(seed, i));
        }
        catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    bool any = false;
    for (const auto& r : results)
        any = any || r.has_value();
    if (!any)
        throw ConfigError("run_pap: every member run failed: " + errors.front());

    PapRunResult r = select_output(std::move(results), ctx);
    for (std::size_t i = 0; i < k; ++i)
        if (!errors[i].empty())
            r.failures.push_back("member " + std::to_string(i) + ": " + errors[i]);
    return r;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

constexpr std::string_view header_line = "# moepap portfolio v1";

std::string number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::string number(int v) { return std::to_string(v); }

double parse_double(std::string_view text, std::string_view key)
{
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v))
        throw ParseError("portfolio: bad number for '" + std::string(key) + "': '" + std::string(text) + "'");
    return v;
}

int parse_int(std::string_view text, std::string_view key)
{
    int v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ParseError("portfolio: bad integer for '" + std::string(key) + "': '" + std::string(text) + "'");
    return v;
}

bool parse_bool(std::string_view text, std::string_view key)
{
    if (text == "true")
        return true;
    if (text == "false")
        return false;
    throw ParseError("portfolio: bad boolean for '" + std::string(key) + "'");
}

std::vector<std::string_view> split_words(std::string_view line)
{
    std::vector<std::string_view> words;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r'))
            ++pos;
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r')
            ++end;
        if (end > pos)
            words.push_back(line.substr(pos, end - pos));
        pos = end;
    }
    return words;
}

} // namespace

std::string format_config(const AlgorithmConfig& c)
{
    std::string out = "member ";
    out += to_string(c.foundation);
    out += ' ';
    out += to_string(c.op);
    auto put = [&](std::string_view key, const std::string& value) {
        out += ' ';
        out += key;
        out += '=';
        out += value;
    };
    if (c.op == OperatorKind::sbx_pm) {
        put("eta_sbx", number(c.sbx.eta));
        put("pc", number(c.sbx.pc));
        put("eta_pm", number(c.pm.eta));
        put("pm", c.pm.pm ? number(*c.pm.pm) : "1/n");
    }
    else if (is_de(c.op)) {
        put("F", number(c.de.F));
        if (c.op == OperatorKind::current_to_rand_p || c.op == OperatorKind::current_to_best_p)
            put("K", number(c.de.K));
        put("p", number(c.de.p));
        put("CR", number(c.de.CR));
    }
    else {
        put("w", number(c.pso.w));
        put("c1", number(c.pso.c1));
        put("c2", number(c.pso.c2));
        put("vmax", number(c.pso.vmax_ratio));
        put("v_change", number(c.pso.v_change));
        put("M", number(c.pso.grid_divisions));
        if (c.op == OperatorKind::smpso) {
            put("pm_eta", number(c.pso.pm_eta));
            put("constriction", c.pso.constriction ? "true" : "false");
        }
        if (c.op == OperatorKind::omopso)
            put("b", number(c.pso.b));
    }
    if (c.foundation == Foundation::moead) {
        put("Ps", number(c.moead.Ps));
        put("nr", number(c.moead.nr));
        put("neighbor_size", number(c.moead.neighbor_size));
    }
    return out;
}

AlgorithmConfig parse_config(std::string_view line)
{
    const auto words = split_words(line);
    if (words.size() < 3 || words[0] != "member")
        throw ParseError("portfolio: expected 'member <foundation> <operator> ...'");
    AlgorithmConfig c;
    try {
        c.foundation = parse_foundation(words[1]);
        c.op = parse_operator(words[2]);
    }
    catch (const ConfigError& e) {
        throw ParseError(std::string("portfolio: ") + e.what());
    }
    if (is_de(c.op))
        c.de.variant = de_variant(c.op);
    if (c.foundation == Foundation::mopso)
        c = AlgorithmConfig::mopso(c.op, c.pso);

    std::map<std::string, std::string_view, std::less<>> values;
    for (std::size_t i = 3; i < words.size(); ++i) {
        const auto eq = words[i].find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw ParseError("portfolio: expected key=value, got '" + std::string(words[i]) + "'");
        if (!values.emplace(std::string(words[i].substr(0, eq)), words[i].substr(eq + 1)).second)
            throw ParseError("portfolio: duplicate key '" + std::string(words[i].substr(0, eq)) + "'");
    }
    auto take = [&](const char* key) {
        const auto it = values.find(key);
        if (it == values.end())
            throw ParseError(std::string("portfolio: missing key '") + key + "'");
        const std::string_view v = it->second;
        values.erase(it);
        return v;
    };

    if (c.op == OperatorKind::sbx_pm) {
        c.sbx.eta = parse_int(take("eta_sbx"), "eta_sbx");
        c.sbx.pc = parse_double(take("pc"), "pc");
        c.pm.eta = parse_int(take("eta_pm"), "eta_pm");
        const std::string_view pm = take("pm");
        if (pm != "1/n")
            c.pm.pm = parse_double(pm, "pm");
    }
    else if (is_de(c.op)) {
        c.de.F = parse_double(take("F"), "F");
        if (c.op == OperatorKind::current_to_rand_p || c.op == OperatorKind::current_to_best_p)
            c.de.K = parse_double(take("K"), "K");
        c.de.p = parse_int(take("p"), "p");
        c.de.CR = parse_double(take("CR"), "CR");
    }
    else {
        c.pso.w = parse_double(take("w"), "w");
        c.pso.c1 = parse_double(take("c1"), "c1");
        c.pso.c2 = parse_double(take("c2"), "c2");
        c.pso.vmax_ratio = parse_double(take("vmax"), "vmax");
        c.pso.v_change = parse_double(take("v_change"), "v_change");
        c.pso.grid_divisions = parse_int(take("M"), "M");
        if (c.op == OperatorKind::smpso) {
            c.pso.pm_eta = parse_int(take("pm_eta"), "pm_eta");
            c.pso.constriction = parse_bool(take("constriction"), "constriction");
        }
        if (c.op == OperatorKind::omopso)
            c.pso.b = parse_int(take("b"), "b");
    }
    if (c.foundation == Foundation::moead) {
        c.moead.Ps = parse_double(take("Ps"), "Ps");
        c.moead.nr = parse_int(take("nr"), "nr");
        c.moead.neighbor_size = parse_int(take("neighbor_size"), "neighbor_size");
    }
    if (!values.empty())
        throw ParseError("portfolio: unexpected key '" + values.begin()->first + "'");
    try {
        c.validate();
    }
    catch (const ConfigError& e) {
        throw ParseError(std::string("portfolio: ") + e.what());
    }
    return c;
}

std::string fingerprint(const AlgorithmConfig& config)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : format_config(config)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_portfolio(std::ostream& out, const Portfolio& portfolio)
{
    out << header_line << '\n';
    out << "name " << portfolio.name << '\n';
    for (const auto& member : portfolio.members)
        out << format_config(member) << '\n';
}

Portfolio read_portfolio(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("portfolio: empty file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != header_line) {
        if (line.rfind("# moepap portfolio", 0) == 0)
            throw ParseError("portfolio: unsupported version (expected '" + std::string(header_line) + "')");
        throw ParseError("portfolio: missing header '" + std::string(header_line) + "'");
    }
    Portfolio p;
    p.name.clear();
    bool named = false;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto words = split_words(line);
        if (words.empty() || words.front().front() == '#')
            continue;
        try {
            if (words.front() == "name") {
                if (named)
                    throw ParseError("portfolio: duplicate name line");
                named = true;
                const auto start = line.find("name") + 4;
                const auto first = line.find_first_not_of(" \t", start);
                p.name = first == std::string::npos ? "" : line.substr(first);
                while (!p.name.empty() && (p.name.back() == '\r' || p.name.back() == ' '))
                    p.name.pop_back();
            }
            else if (words.front() == "member") {
                p.members.push_back(parse_config(line));
            }
            else {
                throw ParseError("portfolio: unknown directive '" + std::string(words.front()) + "'");
            }
        }
        catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (p.members.empty())
        throw ParseError("portfolio: no members");
    if (p.members.size() > max_portfolio_size)
        throw ParseError("portfolio: more than 10 members");
    if (!named)
        p.name = "portfolio";
    return p;
}

void save_portfolio(const Portfolio& portfolio, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write portfolio file " + path.string());
    write_portfolio(out, portfolio);
}

Portfolio load_portfolio(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read portfolio file " + path.string());
    return read_portfolio(in);
}

} // namespace moepap
