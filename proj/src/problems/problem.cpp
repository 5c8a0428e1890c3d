#include "benchmarks.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#ifndef MOEPAP_DATA_DIR
#define MOEPAP_DATA_DIR "data"
#endif

namespace moepap {

namespace {

const char* suite_prefix(Suite s)
{
    switch (s) {
    case Suite::zdt: return "ZDT";
    case Suite::dtlz: return "DTLZ";
    case Suite::wfg: return "WFG";
    case Suite::uf: return "UF";
    }
    return "?";
}

int suite_size(Suite s)
{
    switch (s) {
    case Suite::zdt: return 6;
    case Suite::dtlz: return 7;
    case Suite::wfg: return 9;
    case Suite::uf: return 10;
    }
    return 0;
}

std::string lower_case(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

} // namespace

std::string BenchmarkId::name() const
{
    return suite_prefix(suite) + std::to_string(index);
}

BenchmarkId BenchmarkId::parse(std::string_view name)
{
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    for (Suite s : {Suite::dtlz, Suite::zdt, Suite::wfg, Suite::uf}) {
        const std::string prefix = suite_prefix(s);
        if (upper.rfind(prefix, 0) != 0)
            continue;
        const std::string_view digits = std::string_view(upper).substr(prefix.size());
        int index = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty())
            break;
        if (index < 1 || index > suite_size(s))
            throw Unsupported("unsupported benchmark: " + std::string(name));
        return {s, index};
    }
    throw Unsupported("unsupported benchmark: " + std::string(name));
}

VectorXd Problem::evaluate(const VectorXd& x) const
{
    if (x.size() != variables())
        throw ContractViolation(name() + ": decision vector has length " + std::to_string(x.size()) + ", expected " +
                                std::to_string(variables()));
    for (Index i = 0; i < x.size(); ++i) {
        if (!(x(i) >= bounds_.lower(i) && x(i) <= bounds_.upper(i)))
            throw ContractViolation(name() + ": variable " + std::to_string(i) + " outside its bounds");
    }
    return compute(x);
}

PointSetXd Problem::sample_front(std::size_t) const
{
    throw Unsupported(name() + ": no reference front sampler");
}

VectorXd Problem::objective_upper_bound() const
{
    throw ConfigError(name() + ": no objective upper bound metadata");
}

std::unique_ptr<Problem> make_problem(BenchmarkId id, std::optional<int> n, std::optional<int> m)
{
    std::unique_ptr<Problem> p;
    switch (id.suite) {
    case Suite::zdt: p = detail::make_zdt(id.index); break;
    case Suite::dtlz: p = detail::make_dtlz(id.index); break;
    case Suite::wfg: p = detail::make_wfg(id.index); break;
    case Suite::uf: p = detail::make_uf(id.index); break;
    }
    if (!p)
        throw Unsupported("unsupported benchmark: " + id.name());
    if (n && *n != p->dimension())
        throw ContractViolation(id.name() + " is fixed at dimension " + std::to_string(p->dimension()));
    if (m && *m != p->objectives())
        throw ContractViolation(id.name() + " is fixed at " + std::to_string(p->objectives()) + " objectives");
    return p;
}

std::unique_ptr<Problem> make_problem(std::string_view name)
{
    return make_problem(BenchmarkId::parse(name));
}

std::vector<BenchmarkId> all_benchmarks()
{
    std::vector<BenchmarkId> ids;
    for (Suite s : {Suite::zdt, Suite::dtlz, Suite::wfg, Suite::uf})
        for (int i = 1; i <= suite_size(s); ++i)
            ids.push_back({s, i});
    return ids;
}

VectorXd evaluate(BenchmarkId id, const VectorXd& x)
{
    return make_problem(id)->evaluate(x);
}

ReferenceFront sample_reference_front(BenchmarkId id, std::size_t count)
{
    if (count < 100)
        throw ContractViolation("sample_reference_front: count must be at least 100");
    const auto problem = make_problem(id);
    return {id.name(), problem->sample_front(count)};
}

ObjectiveBox objective_box(const ReferenceFront& front, const VectorXd& upper)
{
    if (front.points.rows() == 0)
        throw ConfigError(front.name + ": empty reference front");
    if (upper.size() != front.points.cols())
        throw ConfigError(front.name + ": upper bound has wrong length");
    ObjectiveBox box{front.points.colwise().minCoeff().transpose(), upper};
    if (!(box.ideal.array() < box.upper.array()).all())
        throw ConfigError(front.name + ": ideal point not strictly below upper bound");
    return box;
}

namespace {

void write_double(std::ostream& out, double v)
{
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, ptr - buf);
}

double parse_double(std::string_view token, const std::string& what)
{
    double v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(what + ": invalid number '" + std::string(token) + "'");
    return v;
}

} // namespace

void write_reference_front(std::ostream& out, const ReferenceFront& front)
{
    out << "# " << front.name << " m=" << front.points.cols() << '\n';
    for (Index r = 0; r < front.points.rows(); ++r) {
        for (Index c = 0; c < front.points.cols(); ++c) {
            if (c > 0)
                out << ' ';
            write_double(out, front.points(r, c));
        }
        out << '\n';
    }
}

ReferenceFront read_reference_front(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw ParseError("reference front: missing '# <name> m=<m>' header");
    std::istringstream header(line.substr(2));
    ReferenceFront front;
    std::string mfield;
    header >> front.name >> mfield;
    if (front.name.empty() || mfield.rfind("m=", 0) != 0)
        throw ParseError("reference front: malformed header '" + line + "'");
    const int m = static_cast<int>(parse_double(std::string_view(mfield).substr(2), "reference front header"));
    if (m < 1)
        throw ParseError("reference front: objective count must be positive");

    std::vector<double> values;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::string_view rest(line);
        int fields = 0;
        while (!rest.empty()) {
            const auto space = rest.find(' ');
            const auto token = rest.substr(0, space);
            if (!token.empty()) {
                values.push_back(parse_double(token, front.name));
                ++fields;
            }
            rest = space == std::string_view::npos ? std::string_view{} : rest.substr(space + 1);
        }
        if (fields != m)
            throw ParseError(front.name + ": line " + std::to_string(rows + 2) + " has " + std::to_string(fields) +
                             " values, expected " + std::to_string(m));
        ++rows;
    }
    front.points = Eigen::Map<PointSetXd>(values.data(), static_cast<Index>(rows), m);
    return front;
}

std::string write_box_metadata(const BoxMetadata& meta)
{
    nlohmann::ordered_json doc;
    doc["version"] = meta.version;
    auto& problems = doc["problems"];
    problems = nlohmann::ordered_json::object();
    for (const auto& [name, box] : meta.boxes) {
        std::vector<std::array<double, 2>> pairs;
        for (Index i = 0; i < box.ideal.size(); ++i)
            pairs.push_back({box.ideal(i), box.upper(i)});
        problems[name] = pairs;
    }
    return doc.dump(2) + "\n";
}

BoxMetadata read_box_metadata(std::string_view text)
{
    BoxMetadata meta;
    try {
        const auto doc = nlohmann::json::parse(text);
        meta.version = doc.at("version").get<int>();
        if (meta.version != BoxMetadata::current_version)
            throw ParseError("box metadata: unsupported version " + std::to_string(meta.version));
        for (const auto& [name, pairs] : doc.at("problems").items()) {
            ObjectiveBox box{VectorXd(static_cast<Index>(pairs.size())), VectorXd(static_cast<Index>(pairs.size()))};
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                box.ideal(static_cast<Index>(i)) = pairs.at(i).at(0).get<double>();
                box.upper(static_cast<Index>(i)) = pairs.at(i).at(1).get<double>();
            }
            meta.boxes.emplace(name, std::move(box));
        }
    }
    catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("box metadata: ") + e.what());
    }
    return meta;
}

ProblemData::ProblemData(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ProblemData::default_directory()
{
    return MOEPAP_DATA_DIR;
}

std::shared_ptr<const ReferenceFront> ProblemData::front(const std::string& name) const
{
    std::lock_guard lock(mutex_);
    if (auto it = fronts_.find(name); it != fronts_.end())
        return it->second;
    const auto path = dir_ / "fronts" / (name + ".txt");
    std::ifstream in(path);
    if (!in)
        throw ConfigError("missing reference front file " + path.string());
    auto front = std::make_shared<const ReferenceFront>(read_reference_front(in));
    if (front->name != name)
        throw ConfigError(path.string() + ": header names '" + front->name + "'");
    fronts_.emplace(name, front);
    return front;
}

ObjectiveBox ProblemData::objective_box(const std::string& name) const
{
    const auto id = BenchmarkId::parse(name);
    const std::string suite = lower_case(suite_prefix(id.suite));
    const auto ref = front(name);

    VectorXd upper;
    {
        std::lock_guard lock(mutex_);
        auto it = suites_.find(suite);
        if (it == suites_.end()) {
            const auto path = dir_ / "boxes" / (suite + ".json");
            std::ifstream in(path);
            if (!in)
                throw ConfigError("missing objective-box metadata " + path.string());
            std::stringstream buffer;
            buffer << in.rdbuf();
            it = suites_.emplace(suite, read_box_metadata(buffer.str())).first;
        }
        auto box = it->second.boxes.find(name);
        if (box == it->second.boxes.end())
            throw ConfigError("no objective-box metadata for " + name);
        upper = box->second.upper;
    }
    return moepap::objective_box(*ref, upper);
}

namespace detail {

PointSetXd clean_front(const PointSetXd& points)
{
    // Sort lexicographically so duplicates are adjacent.
    std::vector<Index> order(static_cast<std::size_t>(points.rows()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        for (Index c = 0; c < points.cols(); ++c) {
            if (points(a, c) != points(b, c))
                return points(a, c) < points(b, c);
        }
        return false;
    });
    std::vector<Index> unique;
    for (Index r : order)
        if (unique.empty() || points.row(unique.back()) != points.row(r))
            unique.push_back(r);
    PointSetXd deduped(static_cast<Index>(unique.size()), points.cols());
    for (std::size_t i = 0; i < unique.size(); ++i)
        deduped.row(static_cast<Index>(i)) = points.row(unique[i]);

    std::vector<Index> kept;
    if (deduped.cols() == 2) {
        // Lexicographic order: a row survives iff its f2 beats every earlier row.
        double best = std::numeric_limits<double>::infinity();
        for (Index r = 0; r < deduped.rows(); ++r)
            if (deduped(r, 1) < best) {
                best = deduped(r, 1);
                kept.push_back(r);
            }
    }
    else {
        kept = nondominated_rows(deduped);
    }
    PointSetXd out(static_cast<Index>(kept.size()), points.cols());
    for (std::size_t i = 0; i < kept.size(); ++i)
        out.row(static_cast<Index>(i)) = deduped.row(kept[i]);
    return out;
}

PointSetXd sample_curve(std::size_t count, double lo, double hi, int m, const std::function<VectorXd(double)>& curve)
{
    for (std::size_t resolution = count;; resolution *= 2) {
        PointSetXd raw(static_cast<Index>(resolution), m);
        for (std::size_t i = 0; i < resolution; ++i) {
            const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(resolution - 1);
            raw.row(static_cast<Index>(i)) = curve(t).transpose();
        }
        PointSetXd front = clean_front(raw);
        if (static_cast<std::size_t>(front.rows()) >= count || resolution > 64 * count)
            return front;
    }
}

PointSetXd sample_surface(std::size_t count, const std::function<VectorXd(double, double)>& surface)
{
    auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
    for (;; side += side / 4 + 1) {
        PointSetXd raw(static_cast<Index>(side * side), 3);
        for (std::size_t i = 0; i < side; ++i)
            for (std::size_t j = 0; j < side; ++j) {
                const double s = static_cast<double>(i) / static_cast<double>(side - 1);
                const double t = static_cast<double>(j) / static_cast<double>(side - 1);
                raw.row(static_cast<Index>(i * side + j)) = surface(s, t).transpose();
            }
        PointSetXd front = clean_front(raw);
        if (static_cast<std::size_t>(front.rows()) >= count || side * side > 16 * count)
            return front;
    }
}

} // namespace detail

} // namespace moepap
