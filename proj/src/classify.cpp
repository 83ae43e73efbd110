#include "fnfpad/classify.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fnfpad/textio.hpp"

namespace fnfpad {

namespace {

constexpr char kModelMagic[] = "FNFPAD-LDA v1";

double znorm(double v, bool valid, double mean, double std) {
  return valid ? (v - mean) / std : 0.0;  // flagged metrics impute to z = 0
}

}  // namespace

double LinearModel::score(const FeatureVector& fv) const {
  if (fv.values.size() != weights.size())
    throw std::invalid_argument("model/feature length mismatch");
  double s = bias;
  for (std::size_t j = 0; j < weights.size(); ++j)
    s += weights[j] * znorm(fv.values[j], fv.valid[j] != 0, norm_mean[j], norm_std[j]);
  return s;
}

LinearModel train_fisher_lda(const std::vector<FeatureVector>& samples,
                             const std::vector<SampleClass>& labels, double ridge) {
  if (samples.size() != labels.size())
    throw std::invalid_argument("train_fisher_lda: samples/labels size mismatch");
  std::size_t ng = 0, ns = 0;
  for (SampleClass c : labels) (c == SampleClass::genuine ? ng : ns)++;
  if (ng < 2 || ns < 2)
    throw std::invalid_argument("train_fisher_lda: need >= 2 samples per class");

  const std::size_t d = canonical_feature_names().size();
  for (const auto& fv : samples)
    if (fv.values.size() != d)
      throw std::invalid_argument("train_fisher_lda: feature vector length mismatch");

  LinearModel model;
  model.feature_names = canonical_feature_names();
  model.norm_mean.assign(d, 0.0);
  model.norm_std.assign(d, 1.0);

  // normalization stats over valid entries only
  for (std::size_t j = 0; j < d; ++j) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& fv : samples)
      if (fv.valid[j]) {
        sum += fv.values[j];
        ++n;
      }
    if (n == 0) continue;
    const double mean = sum / static_cast<double>(n);
    double var = 0.0;
    for (const auto& fv : samples)
      if (fv.valid[j]) var += (fv.values[j] - mean) * (fv.values[j] - mean);
    var /= static_cast<double>(n);
    model.norm_mean[j] = mean;
    model.norm_std[j] = std::sqrt(var) > 1e-12 ? std::sqrt(var) : 1.0;
  }

  Eigen::MatrixXd z(samples.size(), d);
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = 0; j < d; ++j)
      z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          znorm(samples[i].values[j], samples[i].valid[j] != 0, model.norm_mean[j],
                model.norm_std[j]);

  Eigen::VectorXd mu_g = Eigen::VectorXd::Zero(d), mu_s = Eigen::VectorXd::Zero(d);
  for (std::size_t i = 0; i < samples.size(); ++i)
    (labels[i] == SampleClass::genuine ? mu_g : mu_s) += z.row(static_cast<Eigen::Index>(i));
  mu_g /= static_cast<double>(ng);
  mu_s /= static_cast<double>(ns);

  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Eigen::VectorXd& mu = labels[i] == SampleClass::genuine ? mu_g : mu_s;
    const double nc = static_cast<double>(labels[i] == SampleClass::genuine ? ng : ns);
    const Eigen::VectorXd c = z.row(static_cast<Eigen::Index>(i)).transpose() - mu;
    scatter += (c * c.transpose()) / nc;
  }

  const Eigen::VectorXd gap = mu_g - mu_s;
  Eigen::VectorXd w;
  double r = ridge;
  while (true) {
    const Eigen::MatrixXd s =
        scatter + r * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d),
                                                static_cast<Eigen::Index>(d));
    w = s.ldlt().solve(gap);
    const double residual = (s * w - gap).norm();
    const double scale = std::max(1e-30, gap.norm());
    if (w.allFinite() && residual <= 1e-6 * scale) break;
    r *= 10.0;
    if (r > 1e-2) throw std::runtime_error("train_fisher_lda: singular scatter matrix");
  }

  model.weights.assign(w.data(), w.data() + d);
  model.bias = 0.0;
  model.threshold = 0.5 * (w.dot(mu_g) + w.dot(mu_s));
  return model;
}

EvalMetrics evaluate(const LinearModel& model, const std::vector<FeatureVector>& samples,
                     const std::vector<SampleClass>& labels) {
  if (samples.empty() || samples.size() != labels.size())
    throw std::invalid_argument("evaluate: empty or mismatched set");
  std::size_t correct = 0, ng = 0, ns = 0, genuine_rejected = 0, spoof_accepted = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const bool pred_genuine = model.predict_genuine(samples[i]);
    if (labels[i] == SampleClass::genuine) {
      ++ng;
      if (!pred_genuine) ++genuine_rejected;
      else ++correct;
    } else {
      ++ns;
      if (pred_genuine) ++spoof_accepted;
      else ++correct;
    }
  }
  EvalMetrics m;
  m.accuracy = static_cast<double>(correct) / static_cast<double>(samples.size());
  if (ns > 0) {
    m.apcer = static_cast<double>(spoof_accepted) / static_cast<double>(ns);
    m.apcer_defined = true;
  }
  if (ng > 0) {
    m.bpcer = static_cast<double>(genuine_rejected) / static_cast<double>(ng);
    m.bpcer_defined = true;
  }
  return m;
}

std::string serialize_model(const LinearModel& model) {
  std::string out = std::string(kModelMagic) + "\n";
  out += std::to_string(model.feature_names.size()) + "\n";
  for (const auto& n : model.feature_names) out += n + "\n";
  for (std::size_t j = 0; j < model.feature_names.size(); ++j)
    out += format_double(model.norm_mean[j]) + " " + format_double(model.norm_std[j]) + "\n";
  for (double w : model.weights) out += format_double(w) + "\n";
  out += format_double(model.bias) + "\n";
  out += format_double(model.threshold) + "\n";
  return out;
}

LinearModel parse_model(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kModelMagic)
    throw std::runtime_error("unrecognized model file");
  auto next_line = [&]() {
    std::string l;
    if (!std::getline(in, l)) throw std::runtime_error("model file truncated");
    return l;
  };
  const std::size_t d = std::stoul(next_line());
  LinearModel m;
  for (std::size_t j = 0; j < d; ++j) m.feature_names.push_back(next_line());
  for (std::size_t j = 0; j < d; ++j) {
    const auto parts = split(next_line(), ' ');
    if (parts.size() != 2) throw std::runtime_error("model file: bad normalization pair");
    m.norm_mean.push_back(parse_double(parts[0]));
    m.norm_std.push_back(parse_double(parts[1]));
  }
  for (std::size_t j = 0; j < d; ++j) m.weights.push_back(parse_double(next_line()));
  m.bias = parse_double(next_line());
  m.threshold = parse_double(next_line());
  return m;
}

void save_model(const std::string& path, const LinearModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  const std::string text = serialize_model(model);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

LinearModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

}  // namespace fnfpad
