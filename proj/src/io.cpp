#include "spat/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace spat {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  return in;
}

// '#'-prefixed key=value lines at the top of the stream.
std::map<std::string, std::string> read_header(std::istream& in) {
  std::map<std::string, std::string> header;
  while (in.peek() == '#') {
    std::string line;
    std::getline(in, line);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(1, eq - 1);
    while (!key.empty() && key.front() == ' ') key.erase(key.begin());
    while (!key.empty() && key.back() == ' ') key.pop_back();
    header[key] = line.substr(eq + 1);
  }
  return header;
}

const std::string& require_key(const std::map<std::string, std::string>& h,
                               const std::string& key,
                               const std::string& path) {
  const auto it = h.find(key);
  if (it == h.end()) {
    throw std::invalid_argument("'" + path + "': missing header key '" + key +
                                "'");
  }
  return it->second;
}

std::vector<double> parse_csv_row(const std::string& line) {
  std::vector<double> row;
  std::istringstream ls(line);
  std::string cell;
  while (std::getline(ls, cell, ',')) {
    row.push_back(std::stod(cell));
  }
  return row;
}

}  // namespace

void write_measurement_csv(const std::string& path,
                           const MeasurementData& data) {
  std::ofstream out = open_out(path);
  const SensorLayout& l = data.layout;
  out << "# spat-measurement\n";
  out << "# mode=" << mode_name(l.mode) << "\n";
  out << "# domain=" << l.domain.describe() << "\n";
  out << "# n_sensors=" << l.n_sensors << "\n";
  out << "# n_t=" << l.n_t << "\n";
  out << "# t_max=" << fmt17(l.t_max) << "\n";
  if (l.domain.kind() == DomainKind::halfspace) {
    out << "# half_width=" << fmt17(l.half_width) << "\n";
  }
  out << "# phantom_hash=" << data.phantom_hash << "\n";
  for (int i = 0; i < l.n_t; ++i) {
    out << fmt17(l.time(i));
    for (int j = 0; j < l.n_sensors; ++j) {
      out << ',' << fmt17(data.values(j, i));
    }
    out << '\n';
  }
  if (!out) throw std::ios_base::failure("write failed for '" + path + "'");
}

MeasurementData read_measurement_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  const auto header = read_header(in);

  SensorLayout layout;
  layout.mode = parse_mode(require_key(header, "mode", path));
  layout.domain = ConvexDomain::parse(require_key(header, "domain", path));
  layout.n_sensors = std::stoi(require_key(header, "n_sensors", path));
  layout.n_t = std::stoi(require_key(header, "n_t", path));
  layout.t_max = std::stod(require_key(header, "t_max", path));
  if (const auto it = header.find("half_width"); it != header.end()) {
    layout.half_width = std::stod(it->second);
  }

  MeasurementData data(layout);
  if (const auto it = header.find("phantom_hash"); it != header.end()) {
    data.phantom_hash = it->second;
  }
  std::string line;
  int i = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (i >= layout.n_t) {
      throw std::invalid_argument("'" + path + "': more rows than n_t");
    }
    const std::vector<double> row = parse_csv_row(line);
    if (static_cast<int>(row.size()) != layout.n_sensors + 1) {
      throw std::invalid_argument("'" + path + "': row " + std::to_string(i) +
                                  " has wrong column count");
    }
    for (int j = 0; j < layout.n_sensors; ++j) data.values(j, i) = row[j + 1];
    ++i;
  }
  if (i != layout.n_t) {
    throw std::invalid_argument("'" + path + "': expected " +
                                std::to_string(layout.n_t) + " rows, found " +
                                std::to_string(i));
  }
  return data;
}

void write_image_csv(const std::string& path, const ImageGrid& image) {
  std::ofstream out = open_out(path);
  const GridSpec& g = image.spec;
  out << "# spat-image\n";
  out << "# nx=" << g.nx << "\n";
  out << "# ny=" << g.ny << "\n";
  out << "# xmin=" << fmt17(g.xmin) << "\n";
  out << "# xmax=" << fmt17(g.xmax) << "\n";
  out << "# ymin=" << fmt17(g.ymin) << "\n";
  out << "# ymax=" << fmt17(g.ymax) << "\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (i) out << ',';
      out << fmt17(image.values(j, i));
    }
    out << '\n';
  }
  if (!out) throw std::ios_base::failure("write failed for '" + path + "'");
}

ImageGrid read_image_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  const auto header = read_header(in);
  GridSpec g;
  g.nx = std::stoi(require_key(header, "nx", path));
  g.ny = std::stoi(require_key(header, "ny", path));
  g.xmin = std::stod(require_key(header, "xmin", path));
  g.xmax = std::stod(require_key(header, "xmax", path));
  g.ymin = std::stod(require_key(header, "ymin", path));
  g.ymax = std::stod(require_key(header, "ymax", path));
  ImageGrid image(g);
  std::string line;
  int j = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (j >= g.ny) throw std::invalid_argument("'" + path + "': too many rows");
    const std::vector<double> row = parse_csv_row(line);
    if (static_cast<int>(row.size()) != g.nx) {
      throw std::invalid_argument("'" + path + "': row " + std::to_string(j) +
                                  " has wrong column count");
    }
    for (int i = 0; i < g.nx; ++i) image.values(j, i) = row[i];
    ++j;
  }
  if (j != g.ny) {
    throw std::invalid_argument("'" + path + "': expected " +
                                std::to_string(g.ny) + " rows");
  }
  return image;
}

void write_image_pgm(const std::string& path, const ImageGrid& image) {
  std::ofstream out = open_out(path);
  const GridSpec& g = image.spec;
  const double lo = image.values.minCoeff();
  const double hi = image.values.maxCoeff();
  const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
  out << "P2\n" << g.nx << ' ' << g.ny << "\n255\n";
  for (int j = g.ny - 1; j >= 0; --j) {
    for (int i = 0; i < g.nx; ++i) {
      const int v =
          static_cast<int>(std::lround((image.values(j, i) - lo) * scale));
      out << v << (i + 1 == g.nx ? '\n' : ' ');
    }
  }
  if (!out) throw std::ios_base::failure("write failed for '" + path + "'");
}

}  // namespace spat
