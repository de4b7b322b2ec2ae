#include "moqi/csv_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace moqi {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

struct Column {
  bool is_decision = false;
  std::size_t index = 0;  // zero-based
};

[[noreturn]] void fail(const std::string& path, std::size_t line_no,
                       const std::string& what) {
  throw DataError(path + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Population read_population_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  Population pop;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<Column> columns;
  std::size_t n = 0;
  std::size_t m = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    if (stripped.front() == '#') {
      const std::string body = trim(stripped.substr(1));
      const std::string tag = "problem:";
      if (body.rfind(tag, 0) == 0) pop.problem_id = trim(body.substr(tag.size()));
      continue;
    }
    if (!header_seen) {
      const auto cells = split_csv(stripped);
      std::vector<bool> seen_x;
      std::vector<bool> seen_f;
      for (const auto& cell : cells) {
        if (cell.size() < 2 || (cell[0] != 'x' && cell[0] != 'f'))
          fail(path, line_no, "header column '" + cell + "' must be x<k> or f<k>");
        std::size_t idx = 0;
        const auto res =
            std::from_chars(cell.data() + 1, cell.data() + cell.size(), idx);
        if (res.ec != std::errc() || res.ptr != cell.data() + cell.size() || idx == 0)
          fail(path, line_no, "header column '" + cell + "' has no valid index");
        auto& seen = (cell[0] == 'x') ? seen_x : seen_f;
        if (seen.size() < idx) seen.resize(idx, false);
        if (seen[idx - 1])
          fail(path, line_no, "duplicate header column '" + cell + "'");
        seen[idx - 1] = true;
        columns.push_back({cell[0] == 'x', idx - 1});
      }
      for (std::size_t i = 0; i < seen_x.size(); ++i)
        if (!seen_x[i]) fail(path, line_no, "decision columns skip x" + std::to_string(i + 1));
      for (std::size_t i = 0; i < seen_f.size(); ++i)
        if (!seen_f[i]) fail(path, line_no, "objective columns skip f" + std::to_string(i + 1));
      n = seen_x.size();
      m = seen_f.size();
      if (m < 2) fail(path, line_no, "need at least two objective columns f1, f2");
      header_seen = true;
      continue;
    }

    const auto cells = split_csv(stripped);
    if (cells.size() != columns.size())
      fail(path, line_no,
           "row has " + std::to_string(cells.size()) + " cells, header has " +
               std::to_string(columns.size()));
    Individual ind;
    ind.objectives.assign(m, 0.0);
    if (n > 0) ind.decision = Vector(n, 0.0);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double value = 0.0;
      const std::string& cell = cells[c];
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        fail(path, line_no, "cell '" + cell + "' is not numeric");
      if (columns[c].is_decision)
        (*ind.decision)[columns[c].index] = value;
      else
        ind.objectives[columns[c].index] = value;
    }
    pop.members.push_back(std::move(ind));
  }

  if (!header_seen) throw DataError(path + ": missing header line");
  if (pop.members.empty()) throw DataError(path + ": no data rows");
  return pop;
}

void write_population_csv(const Population& pop, const std::string& path) {
  pop.validate();
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  if (!pop.problem_id.empty()) out << "# problem: " << pop.problem_id << "\n";
  const bool with_x = pop.has_decisions();
  const std::size_t n = with_x ? pop.members.front().decision->size() : 0;
  const std::size_t m = pop.objective_count();
  for (std::size_t i = 0; i < n; ++i) out << "x" << (i + 1) << ",";
  for (std::size_t i = 0; i < m; ++i) out << "f" << (i + 1) << (i + 1 < m ? "," : "\n");
  for (const auto& ind : pop.members) {
    for (std::size_t i = 0; i < n; ++i) out << format_full((*ind.decision)[i]) << ",";
    for (std::size_t i = 0; i < m; ++i)
      out << format_full(ind.objectives[i]) << (i + 1 < m ? "," : "\n");
  }
  if (!out) throw DataError("failed while writing '" + path + "'");
}

ReferenceFront read_front_csv(const std::string& path) {
  const Population pop = read_population_csv(path);
  ReferenceFront front;
  front.points = objectives_of(pop);
  return front;
}

void write_front_csv(const ReferenceFront& front, const std::string& path,
                     const std::string& problem_tag) {
  Population pop;
  pop.problem_id = problem_tag;
  pop.members.reserve(front.size());
  for (const auto& p : front.points) {
    Individual ind;
    ind.objectives = p;
    pop.members.push_back(std::move(ind));
  }
  write_population_csv(pop, path);
}

}  // namespace moqi
