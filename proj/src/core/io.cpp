#include "core/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nsconic {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write file: " + path);
    out << content;
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

} // namespace

ConicProblem parse_problem_text(const std::string &json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception &e) {
        throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    try {
        if (!doc.contains("m") || !doc.contains("n") || !doc.contains("A") ||
            !doc.contains("b") || !doc.contains("c") || !doc.contains("cones"))
            throw Error(ErrorCode::ParseError,
                        "problem file requires keys m, n, A, b, c, cones");
        const int m = doc["m"].get<int>();
        const int n = doc["n"].get<int>();
        if (m < 1 || n < 1) throw Error(ErrorCode::ParseError, "m and n must be positive");

        DenseMatrix A(m, n);
        for (const auto &trip : doc["A"]) {
            if (!trip.is_array() || trip.size() != 3)
                throw Error(ErrorCode::ParseError, "A entries must be [row, col, value] triplets");
            const int i = trip[0].get<int>();
            const int j = trip[1].get<int>();
            if (i < 0 || i >= m || j < 0 || j >= n)
                throw Error(ErrorCode::ParseError, "triplet index out of range in A");
            A.at(i, j) += trip[2].get<double>();
        }
        Vec b = doc["b"].get<Vec>();
        Vec c = doc["c"].get<Vec>();
        if (static_cast<int>(b.size()) != m)
            throw Error(ErrorCode::DimensionMismatch, "b length must equal m");
        if (static_cast<int>(c.size()) != n)
            throw Error(ErrorCode::DimensionMismatch, "c length must equal n");

        bool first = true;
        ConeSpec cone = ConeSpec::orthant(1); // replaced below
        int total = 0;
        for (const auto &cb : doc["cones"]) {
            const std::string type = cb.at("type").get<std::string>();
            ConeSpec block = [&]() {
                if (type == "nonneg") {
                    if (!cb.contains("dim"))
                        throw Error(ErrorCode::ParseError, "nonneg cone requires dim");
                    return ConeSpec::orthant(cb["dim"].get<int>());
                }
                if (type == "exp") return ConeSpec::exponential();
                if (type == "pow") {
                    if (!cb.contains("alpha"))
                        throw Error(ErrorCode::ParseError, "pow cone requires alpha");
                    return ConeSpec::power(cb["alpha"].get<double>());
                }
                throw Error(ErrorCode::UnknownConeType, "unknown cone type: " + type);
            }();
            total += block.dim();
            if (first) {
                cone = block;
                first = false;
            } else {
                cone.append(block);
            }
        }
        if (first) throw Error(ErrorCode::ParseError, "cones list must be nonempty");
        if (total != n)
            throw Error(ErrorCode::DimensionMismatch, "cone dimensions must sum to n");

        return make_problem(std::move(A), std::move(b), std::move(c), std::move(cone));
    } catch (const json::exception &e) {
        throw Error(ErrorCode::ParseError, std::string("malformed problem file: ") + e.what());
    }
}

ConicProblem parse_problem(const std::string &path) {
    return parse_problem_text(read_file(path));
}

std::string serialize_problem(const ConicProblem &problem) {
    json doc;
    doc["m"] = problem.rows();
    doc["n"] = problem.cols();
    json trips = json::array();
    for (int i = 0; i < problem.rows(); ++i)
        for (int j = 0; j < problem.cols(); ++j)
            if (problem.A.at(i, j) != 0.0)
                trips.push_back(json::array({i, j, problem.A.at(i, j)}));
    doc["A"] = std::move(trips);
    doc["b"] = problem.b;
    doc["c"] = problem.c;
    json cones = json::array();
    for (const ConeBlock &blk : problem.cone.blocks()) {
        json cb;
        switch (blk.kind) {
        case ConeKind::NonnegOrthant:
            cb["type"] = "nonneg";
            cb["dim"] = blk.dim;
            break;
        case ConeKind::Exponential: cb["type"] = "exp"; break;
        case ConeKind::Power:
            cb["type"] = "pow";
            cb["alpha"] = blk.exponent;
            break;
        }
        cones.push_back(std::move(cb));
    }
    doc["cones"] = std::move(cones);
    return doc.dump(2);
}

void write_problem(const ConicProblem &problem, const std::string &path) {
    write_file(path, serialize_problem(problem));
}

TraceRow to_trace_row(const IterationRecord &rec) {
    TraceRow row;
    row.iter = rec.iter;
    row.mu_e = rec.mu_e;
    row.res_norm = rec.residual_norm;
    row.tau = rec.tau;
    row.kappa = rec.kappa;
    row.delta_p_norm_x = rec.delta_p_norm_x;
    row.alpha = rec.alpha;
    row.gamma = rec.gamma;
    row.a1 = rec.assumptions.a1;
    row.a2 = rec.assumptions.a2;
    row.a3 = rec.assumptions.a3;
    row.a4 = rec.assumptions.a4;
    row.a5 = rec.assumptions.a5;
    row.verdict_failures = rec.verdict_failures();
    return row;
}

std::string serialize_trace(const std::vector<IterationRecord> &trace) {
    std::ostringstream out;
    out << "iter,mu_e,res_norm,tau,kappa,delta_p_norm_x,alpha,gamma,"
           "a1,a2,a3,a4,a5,verdict_failures\n";
    for (const IterationRecord &rec : trace) {
        TraceRow r = to_trace_row(rec);
        out << r.iter << ',' << fmt17(r.mu_e) << ',' << fmt17(r.res_norm) << ',' << fmt17(r.tau)
            << ',' << fmt17(r.kappa) << ',' << fmt17(r.delta_p_norm_x) << ',' << fmt17(r.alpha)
            << ',' << fmt17(r.gamma) << ',' << (r.a1 ? 1 : 0) << ',' << (r.a2 ? 1 : 0) << ','
            << (r.a3 ? 1 : 0) << ',' << (r.a4 ? 1 : 0) << ',' << (r.a5 ? 1 : 0) << ','
            << r.verdict_failures << '\n';
    }
    return out.str();
}

void write_trace(const std::vector<IterationRecord> &trace, const std::string &path) {
    write_file(path, serialize_trace(trace));
}

std::vector<TraceRow> parse_trace_text(const std::string &csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "empty trace file");
    const std::string expected = "iter,mu_e,res_norm,tau,kappa,delta_p_norm_x,alpha,gamma,"
                                 "a1,a2,a3,a4,a5,verdict_failures";
    if (line != expected) throw Error(ErrorCode::ParseError, "unexpected trace header");
    std::vector<TraceRow> rows;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string item;
        std::vector<std::string> cols;
        while (std::getline(fields, item, ',')) cols.push_back(item);
        if (cols.size() != 14)
            throw Error(ErrorCode::ParseError,
                        "trace line " + std::to_string(line_no) + ": expected 14 fields");
        try {
            TraceRow r;
            r.iter = std::stol(cols[0]);
            r.mu_e = std::stod(cols[1]);
            r.res_norm = std::stod(cols[2]);
            r.tau = std::stod(cols[3]);
            r.kappa = std::stod(cols[4]);
            r.delta_p_norm_x = std::stod(cols[5]);
            r.alpha = std::stod(cols[6]);
            r.gamma = std::stod(cols[7]);
            r.a1 = cols[8] == "1";
            r.a2 = cols[9] == "1";
            r.a3 = cols[10] == "1";
            r.a4 = cols[11] == "1";
            r.a5 = cols[12] == "1";
            r.verdict_failures = std::stol(cols[13]);
            rows.push_back(r);
        } catch (const std::exception &) {
            throw Error(ErrorCode::ParseError,
                        "trace line " + std::to_string(line_no) + ": malformed number");
        }
    }
    return rows;
}

std::vector<TraceRow> read_trace(const std::string &path) {
    return parse_trace_text(read_file(path));
}

std::string result_to_json(const SolveResult &result) {
    json doc;
    doc["status"] = solve_status_name(result.status);
    doc["converged"] = result.converged;
    doc["hit_max_iterations"] = result.hit_max_iterations;
    doc["iterations"] = result.iterations;
    doc["mode"] = result.mode == SolveMode::Theoretical ? "theoretical" : "adaptive";
    doc["tau"] = result.tau;
    doc["kappa"] = result.kappa;
    doc["mu_e"] = result.mu_e_final;
    doc["residual_norm"] = result.residual_norm_final;
    doc["residual_norm_initial"] = result.residual_norm_initial;
    doc["x"] = result.x;
    doc["y"] = result.y;
    doc["s"] = result.s;
    doc["verdict_failures"] = result.total_verdict_failures;
    if (result.status == SolveStatus::Optimal) {
        doc["objective_primal"] = result.objective_primal;
        doc["objective_dual"] = result.objective_dual;
        doc["primal_feasibility"] = result.primal_feasibility;
        doc["dual_feasibility"] = result.dual_feasibility;
    }
    return doc.dump(2);
}

} // namespace nsconic
