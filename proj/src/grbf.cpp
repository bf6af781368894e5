#include "magsense/grbf.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "magsense/csv.hpp"

namespace magsense::models {

namespace {

Eigen::VectorXd reading_vector(const DatasetRow& r, int axes) {
    Eigen::VectorXd v(axes);
    if (axes == 2)
        v << r.bx_g, r.bz_g;
    else
        v << r.bx_g, r.by_g, r.bz_g;
    return v;
}

}  // namespace

Eigen::Vector2d GRBFModel::predict(const Vec3& reading_gauss) const {
    Eigen::VectorXd x(input_axes);
    if (input_axes == 2)
        x << reading_gauss.x(), reading_gauss.z();
    else
        x = reading_gauss;
    x = (x - input_mean).cwiseQuotient(input_std);

    const int k = static_cast<int>(centers.rows());
    const double inv = 1.0 / (2.0 * kernel_width * kernel_width);
    Eigen::VectorXd phi(k + 1);
    for (int i = 0; i < k; ++i)
        phi[i] = std::exp(-(x - centers.row(i).transpose()).squaredNorm() * inv);
    phi[k] = 1.0;
    const Eigen::Vector2d out_n = weights.transpose() * phi;
    return output_mean + out_n.cwiseProduct(output_std);
}

GRBFModel grbf_fit(const Dataset& dataset, const GRBFConfig& config, Split split) {
    if (config.input_axes != 2 && config.input_axes != 3)
        throw std::invalid_argument("grbf_fit: input_axes must be 2 or 3");
    std::vector<const DatasetRow*> rows;
    for (const auto& r : dataset.rows)
        if (r.split == split) rows.push_back(&r);
    const int n = static_cast<int>(rows.size());
    if (n < config.center_count)
        throw std::invalid_argument("grbf_fit: fewer training rows than requested centers");

    const int d = config.input_axes;
    Eigen::MatrixXd x(n, d);
    Eigen::MatrixXd y(n, 2);
    for (int i = 0; i < n; ++i) {
        x.row(i) = reading_vector(*rows[i], d).transpose();
        y(i, 0) = rows[i]->fx_gt_n;
        y(i, 1) = rows[i]->fz_gt_n;
    }

    GRBFModel m;
    m.input_axes = d;
    m.trained_on_id = dataset.design_id;
    m.trained_split = split;
    m.input_mean = x.colwise().mean();
    m.input_std = ((x.rowwise() - m.input_mean.transpose()).array().square().colwise().mean())
                      .sqrt()
                      .matrix();
    for (int j = 0; j < d; ++j)
        if (m.input_std[j] < 1e-12) m.input_std[j] = 1.0;
    m.output_mean = y.colwise().mean();
    m.output_std = ((y.rowwise() - m.output_mean.transpose()).array().square().colwise().mean())
                       .sqrt()
                       .matrix();
    for (int j = 0; j < 2; ++j)
        if (m.output_std[j] < 1e-12) m.output_std[j] = 1.0;

    Eigen::MatrixXd xn = (x.rowwise() - m.input_mean.transpose());
    xn.array().rowwise() /= m.input_std.transpose().array();
    Eigen::MatrixXd yn = (y.rowwise() - m.output_mean.transpose());
    yn.array().rowwise() /= m.output_std.transpose().array();

    // Farthest-point sampling, started from the point farthest from the mean.
    const int k = config.center_count;
    std::vector<int> chosen;
    chosen.reserve(k);
    Eigen::VectorXd dist = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    int first = 0;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
        const double dd = xn.row(i).squaredNorm();
        if (dd > best) {
            best = dd;
            first = i;
        }
    }
    chosen.push_back(first);
    for (int c = 1; c < k; ++c) {
        const auto& last = xn.row(chosen.back());
        int far = -1;
        double far_d = -1.0;
        for (int i = 0; i < n; ++i) {
            const double dd = (xn.row(i) - last).squaredNorm();
            if (dd < dist[i]) dist[i] = dd;
            if (dist[i] > far_d) {
                far_d = dist[i];
                far = i;
            }
        }
        if (far_d <= 0.0) throw std::invalid_argument("grbf_fit: fewer distinct readings than centers");
        chosen.push_back(far);
    }
    m.centers.resize(k, d);
    for (int c = 0; c < k; ++c) m.centers.row(c) = xn.row(chosen[c]);

    // Kernel width: median pairwise center distance.
    std::vector<double> pd;
    pd.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) pd.push_back((m.centers.row(i) - m.centers.row(j)).norm());
    if (pd.empty()) {
        m.kernel_width = 1.0;
    } else {
        std::nth_element(pd.begin(), pd.begin() + pd.size() / 2, pd.end());
        m.kernel_width = std::max(pd[pd.size() / 2], 1e-9);
    }

    // Ridge solve of the kernel expansion.
    Eigen::MatrixXd phi(n, k + 1);
    const double inv = 1.0 / (2.0 * m.kernel_width * m.kernel_width);
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < k; ++c)
            phi(i, c) = std::exp(-(xn.row(i) - m.centers.row(c)).squaredNorm() * inv);
        phi(i, k) = 1.0;
    }
    Eigen::MatrixXd gram = phi.transpose() * phi;
    gram.diagonal().array() += config.lambda;
    const Eigen::LDLT<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success)
        throw NumericError("grbf_fit: singular normal equations; increase lambda (> 0)");
    m.weights = solver.solve(phi.transpose() * yn);
    const double residual = (gram * m.weights - phi.transpose() * yn).norm();
    if (!m.weights.allFinite() || residual > 1e-3 * std::max(1.0, yn.norm()))
        throw NumericError("grbf_fit: ill-conditioned normal equations; increase lambda (> 0)");
    return m;
}

void grbf_save(const GRBFModel& m, const std::string& path, const std::string& manifest_hash) {
    nlohmann::ordered_json j;
    j["format"] = "magsense-grbf";
    j["version"] = 1;
    j["manifest"] = manifest_hash;
    j["input_axes"] = m.input_axes;
    j["kernel_width"] = m.kernel_width;
    j["trained_on_id"] = m.trained_on_id;
    j["trained_split"] = split_name(m.trained_split);
    const auto mat = [](const Eigen::MatrixXd& a) {
        std::vector<std::vector<double>> v(a.rows());
        for (int i = 0; i < a.rows(); ++i) {
            v[i].resize(a.cols());
            for (int c = 0; c < a.cols(); ++c) v[i][c] = a(i, c);
        }
        return v;
    };
    j["centers"] = mat(m.centers);
    j["weights"] = mat(m.weights);
    j["input_mean"] = std::vector<double>(m.input_mean.data(), m.input_mean.data() + m.input_mean.size());
    j["input_std"] = std::vector<double>(m.input_std.data(), m.input_std.data() + m.input_std.size());
    j["output_mean"] = std::vector<double>{m.output_mean[0], m.output_mean[1]};
    j["output_std"] = std::vector<double>{m.output_std[0], m.output_std[1]};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(1) << "\n";
}

GRBFModel grbf_load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("format", "") != "magsense-grbf" || j.value("version", 0) != 1)
        throw std::runtime_error("grbf_load: unsupported model format/version in " + path);
    GRBFModel m;
    m.input_axes = j.at("input_axes").get<int>();
    m.kernel_width = j.at("kernel_width").get<double>();
    m.trained_on_id = j.value("trained_on_id", "");
    m.trained_split = split_from_name(j.value("trained_split", "train"));
    const auto mat = [&](const char* key) {
        const auto rows = j.at(key).get<std::vector<std::vector<double>>>();
        Eigen::MatrixXd a(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t c = 0; c < rows[i].size(); ++c) a(i, c) = rows[i][c];
        return a;
    };
    m.centers = mat("centers");
    m.weights = mat("weights");
    const auto vec = [&](const char* key) {
        const auto v = j.at(key).get<std::vector<double>>();
        return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()).eval();
    };
    m.input_mean = vec("input_mean");
    m.input_std = vec("input_std");
    const auto om = j.at("output_mean").get<std::vector<double>>();
    const auto os = j.at("output_std").get<std::vector<double>>();
    m.output_mean = Eigen::Vector2d(om[0], om[1]);
    m.output_std = Eigen::Vector2d(os[0], os[1]);
    return m;
}

}  // namespace magsense::models
