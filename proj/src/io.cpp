#include "vi/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "vi/config.hpp"
#include "vi/errors.hpp"
#include "vi/format.hpp"

namespace vi {
namespace {

std::string next_header_token(std::istream& in) {
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        return tok;
    }
    throw IoError("truncated PGM header");
}

int header_int(std::istream& in, const char* what) {
    const auto tok = next_header_token(in);
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size() || v <= 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw IoError(std::string("bad PGM ") + what + ": '" + tok + "'");
    }
}

double read_number(std::istream& in, const char* what) {
    std::string tok;
    if (!(in >> tok)) throw IoError(std::string("unexpected end of input while reading ") + what);
    try {
        return parse_real(tok, what);
    } catch (const ConfigError& e) {
        throw IoError(e.what());
    }
}

Vector read_vector(std::istream& in, Eigen::Index n, const char* what) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = read_number(in, what);
    return v;
}

void write_row(std::ostream& out, const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? " " : "") << format_real(v[i]);
    out << '\n';
}

Vector parse_list(const std::string& text, const std::string& key) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto b = tok.find_first_not_of(" \t");
        const auto e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw ConfigError("empty entry in list for key '" + key + "'");
        vals.push_back(parse_real(tok.substr(b, e - b + 1), "key '" + key + "'"));
    }
    return Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

std::string csv_field(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

}  // namespace

Image read_pgm(std::istream& in) {
    std::string magic;
    if (!(in >> magic) || magic != "P5") throw IoError("not a binary PGM (expected magic P5)");
    Image img;
    img.cols = header_int(in, "width");
    img.rows = header_int(in, "height");
    const int maxval = header_int(in, "maxval");
    if (maxval != 255) throw IoError("only maxval 255 is supported, got " + std::to_string(maxval));
    in.get();  // single whitespace byte before the raster
    const auto count = static_cast<std::size_t>(img.rows) * static_cast<std::size_t>(img.cols);
    std::string raster(count, '\0');
    if (!in.read(raster.data(), static_cast<std::streamsize>(count))) throw IoError("truncated PGM raster");
    img.pixels.resize(static_cast<Eigen::Index>(count));
    for (std::size_t i = 0; i < count; ++i) {
        img.pixels[static_cast<Eigen::Index>(i)] = static_cast<unsigned char>(raster[i]) / 255.0;
    }
    return img;
}

Image read_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open image '" + path + "': file not found or unreadable");
    return read_pgm(in);
}

void write_pgm(std::ostream& out, const Image& img) {
    if (img.pixels.size() != static_cast<Eigen::Index>(img.rows) * img.cols) {
        throw IoError("image buffer does not match its dimensions");
    }
    out << "P5\n" << img.cols << ' ' << img.rows << "\n255\n";
    std::string raster(static_cast<std::size_t>(img.pixels.size()), '\0');
    for (Eigen::Index i = 0; i < img.pixels.size(); ++i) {
        const double v = std::clamp(img.pixels[i], 0.0, 1.0);
        raster[static_cast<std::size_t>(i)] = static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0)));
    }
    out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
}

void write_pgm_file(const std::string& path, const Image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write image '" + path + "'");
    write_pgm(out, img);
}

PolyhedralSet read_polyhedral_set(std::istream& in) {
    const double qd = read_number(in, "row count q");
    const double nd = read_number(in, "column count n");
    if (qd < 0 || nd < 1 || qd != std::floor(qd) || nd != std::floor(nd)) throw IoError("bad dimensions 'q n'");
    const auto q = static_cast<Eigen::Index>(qd);
    const auto n = static_cast<Eigen::Index>(nd);
    Matrix T(q, n);
    for (Eigen::Index i = 0; i < q; ++i)
        for (Eigen::Index j = 0; j < n; ++j) T(i, j) = read_number(in, "matrix T");
    Vector r = read_vector(in, q, "balances r");
    Vector lower = read_vector(in, n, "lower bounds");
    Vector upper = read_vector(in, n, "upper bounds");
    return PolyhedralSet(std::move(T), std::move(r), std::move(lower), std::move(upper));
}

void write_polyhedral_set(std::ostream& out, const PolyhedralSet& set) {
    const Matrix& T = set.affine().matrix();
    out << T.rows() << ' ' << T.cols() << '\n';
    for (Eigen::Index i = 0; i < T.rows(); ++i) write_row(out, T.row(i).transpose());
    write_row(out, set.affine().rhs());
    write_row(out, set.box().lower);
    write_row(out, set.box().upper);
}

NetworkProblem read_network_problem(std::istream& in) {
    const PolyhedralSet set = read_polyhedral_set(in);
    if ((set.box().lower.array() != 0.0).any()) throw IoError("network problem: lower bounds must be zero");
    Vector D = read_vector(in, set.dimension(), "arc costs D");
    return NetworkProblem(std::move(D), set.affine().matrix(), set.affine().rhs(), set.box().upper);
}

NetworkProblem read_network_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open problem file '" + path + "': file not found or unreadable");
    return read_network_problem(in);
}

void write_network_problem(std::ostream& out, const NetworkProblem& p) {
    write_polyhedral_set(out, *p.feasible_set());
    write_row(out, p.costs());
}

NashProblem read_nash_problem_file(const std::string& path) {
    const KeyValues kv = read_key_values(path);
    Vector e, O, r;
    double scale = 5000.0, exponent = 1.1;
    std::optional<Vector> solution;
    for (const auto& [key, value] : kv) {
        if (key == "e") e = parse_list(value, key);
        else if (key == "O") O = parse_list(value, key);
        else if (key == "r") r = parse_list(value, key);
        else if (key == "demand_scale") scale = parse_real(value, "key 'demand_scale'");
        else if (key == "demand_exponent") exponent = parse_real(value, "key 'demand_exponent'");
        else if (key == "known_solution") solution = parse_list(value, key);
        else throw ConfigError("unknown Nash problem key '" + key + "'");
    }
    return NashProblem(std::move(e), std::move(O), std::move(r), scale, exponent, std::move(solution));
}

void write_trace_csv(std::ostream& out, const std::vector<IterationRecord>& trace, bool with_timing) {
    out << "n,E_n,lambda_n,dist_to_pstar,step_norm,elapsed_ms\n";
    for (const auto& r : trace) {
        out << r.n << ',' << format_real(r.E) << ',' << format_real(r.lambda) << ',' << csv_field(r.dist_to_pstar)
            << ',' << format_real(r.step_norm) << ',' << (with_timing ? format_real(r.elapsed_ms) : "") << '\n';
    }
}

std::vector<IterationRecord> read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "n,E_n,lambda_n,dist_to_pstar,step_norm,elapsed_ms") {
        throw IoError("trace CSV: missing or unexpected header");
    }
    std::vector<IterationRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        if (f.size() != 6) throw IoError("trace CSV: expected 6 fields, got " + std::to_string(f.size()));
        IterationRecord r;
        try {
            r.n = std::stol(f[0]);
            r.E = parse_real(f[1], "E_n");
            r.lambda = parse_real(f[2], "lambda_n");
            if (!f[3].empty()) r.dist_to_pstar = parse_real(f[3], "dist_to_pstar");
            r.step_norm = parse_real(f[4], "step_norm");
            r.elapsed_ms = f[5].empty() ? 0.0 : parse_real(f[5], "elapsed_ms");
        } catch (const std::exception& e) {
            throw IoError(std::string("trace CSV: ") + e.what());
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace vi
