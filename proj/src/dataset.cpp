#include "autocd/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace autocd {

Column continuous_column(std::string name, std::vector<double> values) {
    Column c;
    c.name = std::move(name);
    c.type = ColumnType::Continuous;
    c.values = std::move(values);
    return c;
}

Column categorical_column(std::string name, std::vector<int> codes,
                          std::vector<std::string> levels) {
    Column c;
    c.name = std::move(name);
    c.type = ColumnType::Categorical;
    c.codes = std::move(codes);
    c.levels = std::move(levels);
    for (int code : c.codes)
        if (code < 0 || code >= c.n_levels())
            throw std::invalid_argument("column " + c.name + " has out-of-range code");
    return c;
}

Dataset::Dataset(std::vector<Column> columns) : cols_(std::move(columns)) {
    if (!cols_.empty()) n_rows_ = static_cast<int>(cols_[0].size());
    for (int i = 0; i < n_cols(); ++i) {
        const Column& c = cols_[i];
        if (static_cast<int>(c.size()) != n_rows_)
            throw std::invalid_argument("column " + c.name + " has mismatched length");
        if (c.type == ColumnType::Categorical)
            for (int code : c.codes)
                if (code < 0 || code >= c.n_levels())
                    throw std::invalid_argument("column " + c.name + " has out-of-range code");
        if (!index_.emplace(c.name, i).second)
            throw std::invalid_argument("duplicate column name: " + c.name);
    }
}

const Column& Dataset::col(int i) const {
    if (i < 0 || i >= n_cols()) throw std::invalid_argument("column index out of range");
    return cols_[i];
}

int Dataset::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown column: " + name);
    return it->second;
}

int Dataset::find_index(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

bool Dataset::has_lag_meta() const {
    if (cols_.empty()) return false;
    for (const Column& c : cols_)
        if (c.variable.empty() || c.lag < 0) return false;
    return true;
}

int Dataset::max_lag() const {
    int m = -1;
    for (const Column& c : cols_) m = std::max(m, c.lag);
    return m;
}

Dataset Dataset::select_cols(const std::vector<int>& idx) const {
    std::vector<Column> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(col(i));
    return Dataset(std::move(out));
}

Dataset Dataset::select_rows(const std::vector<int>& rows) const {
    for (int r : rows)
        if (r < 0 || r >= n_rows_) throw std::invalid_argument("row index out of range");
    std::vector<Column> out;
    out.reserve(cols_.size());
    for (const Column& c : cols_) {
        Column nc = c;
        if (c.type == ColumnType::Continuous) {
            nc.values.clear();
            nc.values.reserve(rows.size());
            for (int r : rows) nc.values.push_back(c.values[r]);
        } else {
            nc.codes.clear();
            nc.codes.reserve(rows.size());
            for (int r : rows) nc.codes.push_back(c.codes[r]);
        }
        out.push_back(std::move(nc));
    }
    return Dataset(std::move(out));
}

std::vector<GraphNode> Dataset::nodes() const {
    std::vector<GraphNode> out;
    out.reserve(cols_.size());
    for (const Column& c : cols_) {
        GraphNode nd = make_node(c.name);
        if (!c.variable.empty()) nd.variable = c.variable;
        nd.lag = c.lag;
        out.push_back(std::move(nd));
    }
    return out;
}

namespace {

bool missing_token(const std::string& s) {
    return s.empty() || s == "NA" || s == "na" || s == "NaN" || s == "nan" || s == "NULL" ||
           s == "null" || s == "?";
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + s.size() && end != begin;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

Column build_categorical(const std::string& name, const std::vector<std::string>& cells) {
    std::set<std::string> distinct(cells.begin(), cells.end());
    std::vector<std::string> levels(distinct.begin(), distinct.end());
    // numeric level labels sort by value so codes are stable and readable
    bool all_numeric = true;
    std::vector<double> nums(levels.size());
    for (size_t i = 0; i < levels.size() && all_numeric; ++i)
        all_numeric = parse_double(levels[i], nums[i]);
    if (all_numeric) {
        std::vector<size_t> order(levels.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&nums](size_t a, size_t b) { return nums[a] < nums[b]; });
        std::vector<std::string> sorted;
        for (size_t i : order) sorted.push_back(levels[i]);
        levels = std::move(sorted);
    }
    std::unordered_map<std::string, int> code_of;
    for (size_t i = 0; i < levels.size(); ++i) code_of.emplace(levels[i], static_cast<int>(i));
    std::vector<int> codes;
    codes.reserve(cells.size());
    for (const std::string& cell : cells) codes.push_back(code_of.at(cell));
    return categorical_column(name, std::move(codes), std::move(levels));
}

} // namespace

Dataset load_csv(const std::string& csv_path, const std::string& schema_path,
                 std::vector<std::string>* warnings) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open: " + csv_path);

    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty csv: " + csv_path);
    const std::vector<std::string> names = split_csv_line(line);
    const size_t width = names.size();

    std::vector<std::vector<std::string>> raw(width);
    int row = 1;
    while (std::getline(in, line)) {
        if (line.empty() && in.eof()) break;
        ++row;
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != width)
            throw std::invalid_argument(csv_path + ": row " + std::to_string(row) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(width));
        for (size_t c = 0; c < width; ++c) {
            if (missing_token(cells[c]))
                throw std::invalid_argument(csv_path + ": missing value at row " +
                                            std::to_string(row) + ", column " + names[c]);
            raw[c].push_back(std::move(cells[c]));
        }
    }

    struct SchemaEntry {
        ColumnType type;
        std::string variable;
        int lag = -1;
    };
    std::unordered_map<std::string, SchemaEntry> schema;
    if (!schema_path.empty()) {
        std::ifstream sin(schema_path);
        if (!sin) throw std::runtime_error("cannot open: " + schema_path);
        const nlohmann::json js = nlohmann::json::parse(sin);
        for (const auto& entry : js) {
            SchemaEntry se;
            const std::string type = entry.at("type").get<std::string>();
            if (type == "continuous")
                se.type = ColumnType::Continuous;
            else if (type == "categorical")
                se.type = ColumnType::Categorical;
            else
                throw std::invalid_argument("unknown column type in schema: " + type);
            se.variable = entry.value("variable", std::string{});
            se.lag = entry.value("lag", -1);
            schema.emplace(entry.at("name").get<std::string>(), se);
        }
    }

    std::vector<Column> cols;
    for (size_t c = 0; c < width; ++c) {
        const std::string& name = names[c];
        ColumnType type;
        std::string variable;
        int lag = -1;
        std::vector<double> parsed(raw[c].size());
        bool all_numeric = true;
        for (size_t r = 0; r < raw[c].size() && all_numeric; ++r)
            all_numeric = parse_double(raw[c][r], parsed[r]);

        if (!schema.empty()) {
            auto it = schema.find(name);
            if (it == schema.end())
                throw std::invalid_argument("schema is missing column: " + name);
            type = it->second.type;
            variable = it->second.variable;
            lag = it->second.lag;
            if (type == ColumnType::Continuous && !all_numeric)
                throw std::invalid_argument("column " + name +
                                            " declared continuous but has non-numeric cells");
        } else if (!all_numeric) {
            type = ColumnType::Categorical;
        } else {
            bool all_int = true;
            std::set<double> distinct;
            for (double v : parsed) {
                if (v != std::floor(v) || std::abs(v) > 1e9) {
                    all_int = false;
                    break;
                }
                distinct.insert(v);
            }
            if (all_int && distinct.size() <= 10) {
                type = ColumnType::Categorical;
                if (warnings)
                    warnings->push_back("column " + name + " inferred categorical (" +
                                        std::to_string(distinct.size()) +
                                        " distinct integer values)");
            } else {
                type = ColumnType::Continuous;
            }
        }

        Column col = type == ColumnType::Continuous
                         ? continuous_column(name, std::move(parsed))
                         : build_categorical(name, raw[c]);
        col.variable = variable;
        col.lag = lag;
        cols.push_back(std::move(col));
    }
    return Dataset(std::move(cols));
}

void save_csv(const Dataset& d, const std::string& csv_path, const std::string& schema_path) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + csv_path);
    for (int c = 0; c < d.n_cols(); ++c) out << (c ? "," : "") << d.col(c).name;
    out << '\n';
    char buf[32];
    for (int r = 0; r < d.n_rows(); ++r) {
        for (int c = 0; c < d.n_cols(); ++c) {
            const Column& col = d.col(c);
            if (c) out << ',';
            if (col.type == ColumnType::Continuous) {
                std::snprintf(buf, sizeof buf, "%.17g", col.values[r]);
                out << buf;
            } else {
                out << col.levels[col.codes[r]];
            }
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + csv_path);

    if (schema_path.empty()) return;
    nlohmann::json js = nlohmann::json::array();
    for (const Column& col : d.columns()) {
        nlohmann::json entry{
            {"name", col.name},
            {"type", col.type == ColumnType::Continuous ? "continuous" : "categorical"}};
        if (!col.variable.empty()) entry["variable"] = col.variable;
        if (col.lag >= 0) entry["lag"] = col.lag;
        js.push_back(std::move(entry));
    }
    std::ofstream sout(schema_path);
    if (!sout) throw std::runtime_error("cannot open for writing: " + schema_path);
    sout << js.dump(2) << '\n';
}

} // namespace autocd
