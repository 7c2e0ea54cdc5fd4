#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "autocd/graph.hpp"

namespace autocd {

enum class ColumnType { Continuous, Categorical };

// One column of a sample table. Continuous columns fill `values`,
// categorical columns fill `codes` (indices into `levels`). `variable`/`lag`
// carry the lag-embedding metadata when the column belongs to a time-lagged
// table.
struct Column {
    std::string name;
    ColumnType type = ColumnType::Continuous;
    std::vector<double> values;
    std::vector<int> codes;
    std::vector<std::string> levels;
    std::string variable;
    int lag = -1;

    size_t size() const {
        return type == ColumnType::Continuous ? values.size() : codes.size();
    }
    int n_levels() const { return static_cast<int>(levels.size()); }
};

Column continuous_column(std::string name, std::vector<double> values);
Column categorical_column(std::string name, std::vector<int> codes,
                          std::vector<std::string> levels);

class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<Column> columns);

    int n_rows() const { return n_rows_; }
    int n_cols() const { return static_cast<int>(cols_.size()); }
    const Column& col(int i) const;
    const Column& col(const std::string& name) const { return col(index_of(name)); }
    const std::vector<Column>& columns() const { return cols_; }
    int index_of(const std::string& name) const;
    int find_index(const std::string& name) const;

    bool has_lag_meta() const; // every column carries (variable, lag)
    int max_lag() const;

    Dataset select_cols(const std::vector<int>& idx) const;
    Dataset select_rows(const std::vector<int>& rows) const;

    // One graph node per column; lag metadata carried over when present.
    std::vector<GraphNode> nodes() const;

private:
    std::vector<Column> cols_;
    std::unordered_map<std::string, int> index_;
    int n_rows_ = 0;
};

// CSV with a header row. Types come from the sidecar schema when given
// (array of {"name", "type"} records, optionally with "variable"/"lag"),
// otherwise inferred: non-numeric cells make a column categorical, and an
// all-integer column with at most 10 distinct values is treated as
// categorical with a warning. Missing values are rejected.
Dataset load_csv(const std::string& csv_path, const std::string& schema_path = "",
                 std::vector<std::string>* warnings = nullptr);
void save_csv(const Dataset& d, const std::string& csv_path,
              const std::string& schema_path = "");

} // namespace autocd
