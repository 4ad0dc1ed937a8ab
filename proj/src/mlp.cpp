#include "lobmimic/mlp.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace lobmimic {

const char* to_string(Activation a) noexcept { return a == Activation::Tanh ? "tanh" : "relu"; }

Activation parse_activation(const std::string& name) {
  if (name == "tanh") return Activation::Tanh;
  if (name == "relu") return Activation::Relu;
  throw ConfigError("unknown activation '" + name + "'");
}

std::size_t MlpModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += static_cast<std::size_t>(l.weights.size() + l.bias.size());
  return n;
}

Samples make_samples(std::span<const TapeRecord> records, const FeatureConstants& constants) {
  Samples s;
  s.inputs.resize(static_cast<Eigen::Index>(kFeatureCount),
                  static_cast<Eigen::Index>(records.size()));
  s.targets.resize(static_cast<Eigen::Index>(records.size()));
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto f = featurize(records[i], constants);
    const auto col = static_cast<Eigen::Index>(i);
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      s.inputs(static_cast<Eigen::Index>(k), col) = f[k];
    }
    s.targets(col) = quote_target(records[i].quote, constants);
  }
  return s;
}

MlpModel mlp_init(const std::vector<int>& layer_sizes, Activation hidden, UniformSource& rng) {
  if (layer_sizes.size() < 3) {
    throw ConfigError("a network needs an input, at least one hidden and an output layer");
  }
  for (int n : layer_sizes) {
    if (n <= 0) throw ConfigError("layer sizes must be positive");
  }
  MlpModel m;
  m.layer_sizes = layer_sizes;
  m.hidden = hidden;
  for (std::size_t l = 1; l < layer_sizes.size(); ++l) {
    const int fan_in = layer_sizes[l - 1];
    const int fan_out = layer_sizes[l];
    const double r = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    DenseLayer layer{Eigen::MatrixXd(fan_out, fan_in), Eigen::VectorXd::Zero(fan_out)};
    for (int i = 0; i < fan_out; ++i) {
      for (int j = 0; j < fan_in; ++j) layer.weights(i, j) = uniform(rng, -r, r);
    }
    m.layers.push_back(std::move(layer));
  }
  return m;
}

namespace {

void activate(Activation a, Eigen::MatrixXd& z) {
  if (a == Activation::Tanh) {
    z = z.array().tanh().matrix();
  } else {
    z = z.array().max(0.0).matrix();
  }
}

// Derivative expressed through the activation output h.
Eigen::ArrayXXd activation_slope(Activation a, const Eigen::MatrixXd& h) {
  if (a == Activation::Tanh) return 1.0 - h.array().square();
  return (h.array() > 0.0).cast<double>();
}

void check_input_rows(const MlpModel& model, Eigen::Index rows) {
  if (model.layers.empty()) throw ShapeError("model has no layers");
  if (rows != model.input_size()) {
    throw ShapeError("input has " + std::to_string(rows) + " features, model expects " +
                     std::to_string(model.input_size()));
  }
}

}  // namespace

Eigen::VectorXd mlp_forward_batch(const MlpModel& model, const Eigen::MatrixXd& inputs) {
  check_input_rows(model, inputs.rows());
  Eigen::MatrixXd h = inputs;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const auto& layer = model.layers[l];
    Eigen::MatrixXd z = layer.weights * h;
    z.colwise() += layer.bias;
    if (l + 1 < model.layers.size()) activate(model.hidden, z);
    h = std::move(z);
  }
  return h.row(0).transpose();
}

double mlp_forward(const MlpModel& model, std::span<const double> input) {
  check_input_rows(model, static_cast<Eigen::Index>(input.size()));
  const Eigen::Map<const Eigen::VectorXd> x(input.data(), static_cast<Eigen::Index>(input.size()));
  Eigen::VectorXd h = x;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const auto& layer = model.layers[l];
    Eigen::VectorXd z = layer.weights * h + layer.bias;
    if (l + 1 < model.layers.size()) {
      if (model.hidden == Activation::Tanh) {
        z = z.array().tanh().matrix();
      } else {
        z = z.array().max(0.0).matrix();
      }
    }
    h = std::move(z);
  }
  return h(0);
}

LossGradient loss_gradient(const MlpModel& model, const Eigen::MatrixXd& inputs,
                           const Eigen::VectorXd& targets) {
  check_input_rows(model, inputs.rows());
  const auto n = inputs.cols();
  const std::size_t depth = model.layers.size();
  std::vector<Eigen::MatrixXd> acts;  // acts[l] is the input to layer l
  acts.reserve(depth + 1);
  acts.push_back(inputs);
  for (std::size_t l = 0; l < depth; ++l) {
    Eigen::MatrixXd z = model.layers[l].weights * acts.back();
    z.colwise() += model.layers[l].bias;
    if (l + 1 < depth) activate(model.hidden, z);
    acts.push_back(std::move(z));
  }

  LossGradient out;
  const Eigen::RowVectorXd residual = acts.back().row(0) - targets.transpose();
  out.loss = residual.squaredNorm() / static_cast<double>(n);
  out.grads.resize(depth);

  Eigen::MatrixXd delta = (2.0 / static_cast<double>(n)) * residual;
  for (std::size_t l = depth; l-- > 0;) {
    out.grads[l].weights = delta * acts[l].transpose();
    out.grads[l].bias = delta.rowwise().sum();
    if (l > 0) {
      Eigen::MatrixXd back = model.layers[l].weights.transpose() * delta;
      delta = (back.array() * activation_slope(model.hidden, acts[l])).matrix();
    }
  }
  return out;
}

double rms_error(const MlpModel& model, const Samples& samples) {
  if (samples.size() == 0) throw DatasetError("rms of an empty partition");
  const Eigen::VectorXd pred = mlp_forward_batch(model, samples.inputs);
  return std::sqrt((pred - samples.targets).squaredNorm() / static_cast<double>(samples.size()));
}

void validate(const TrainConfig& c) {
  if (c.epochs <= 0) throw ConfigError("epochs must be positive");
  if (c.batch_size <= 0) throw ConfigError("batch_size must be positive");
  if (!(c.learning_rate >= 0.0) || !std::isfinite(c.learning_rate)) {
    throw ConfigError("learning_rate must be finite and non-negative");
  }
  if (!(c.momentum >= 0.0 && c.momentum < 1.0)) throw ConfigError("momentum must lie in [0, 1)");
}

namespace {

bool all_finite(const MlpModel& m) {
  for (const auto& l : m.layers) {
    if (!l.weights.allFinite() || !l.bias.allFinite()) return false;
  }
  return true;
}

}  // namespace

TrainResult mlp_train(MlpModel model, const Samples& train, const Samples& test,
                      const TrainConfig& config) {
  validate(config);
  if (train.size() == 0 || test.size() == 0) throw DatasetError("empty train or test partition");
  check_input_rows(model, train.inputs.rows());
  check_input_rows(model, test.inputs.rows());

  Rng rng(config.seed);
  std::vector<DenseLayer> velocity;
  for (const auto& l : model.layers) {
    velocity.push_back({Eigen::MatrixXd::Zero(l.weights.rows(), l.weights.cols()),
                        Eigen::VectorXd::Zero(l.bias.size())});
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(train.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});

  TrainResult result;
  Eigen::MatrixXd batch_x;
  Eigen::VectorXd batch_y;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(i) - 1));
      std::swap(order[i - 1], order[j]);
    }
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t stop =
          std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      const auto b = static_cast<Eigen::Index>(stop - start);
      batch_x.resize(train.inputs.rows(), b);
      batch_y.resize(b);
      for (Eigen::Index k = 0; k < b; ++k) {
        const Eigen::Index src = order[start + static_cast<std::size_t>(k)];
        batch_x.col(k) = train.inputs.col(src);
        batch_y(k) = train.targets(src);
      }
      const LossGradient g = loss_gradient(model, batch_x, batch_y);
      if (!std::isfinite(g.loss)) throw DivergenceError(epoch, "non-finite loss");
      for (std::size_t l = 0; l < model.layers.size(); ++l) {
        velocity[l].weights = config.momentum * velocity[l].weights -
                              config.learning_rate * g.grads[l].weights;
        velocity[l].bias =
            config.momentum * velocity[l].bias - config.learning_rate * g.grads[l].bias;
        model.layers[l].weights += velocity[l].weights;
        model.layers[l].bias += velocity[l].bias;
      }
    }
    if (!all_finite(model)) throw DivergenceError(epoch, "non-finite weights");
    const double train_rms = rms_error(model, train);
    const double test_rms = rms_error(model, test);
    if (!std::isfinite(train_rms) || !std::isfinite(test_rms)) {
      throw DivergenceError(epoch, "non-finite rms");
    }
    result.train_rms.push_back(train_rms);
    result.test_rms.push_back(test_rms);
  }
  result.model = std::move(model);
  return result;
}

// File layout:
//   lobmimic-mlp 1
//   layers <count> <size>...
//   activation <tanh|relu>
//   constants <p_max> <q_norm> <horizon>
//   then per layer: "layer <index> <rows> <cols>", one line of row-major
//   weights, one line of biases.
void write_model(std::ostream& out, const MlpModel& m) {
  out << "lobmimic-mlp 1\n";
  out << "layers " << m.layer_sizes.size();
  for (int n : m.layer_sizes) out << ' ' << n;
  out << "\nactivation " << to_string(m.hidden) << '\n';
  out << "constants " << format_real(m.constants.p_max) << ' ' << format_real(m.constants.q_norm)
      << ' ' << format_real(m.constants.horizon) << '\n';
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const auto& w = m.layers[l].weights;
    out << "layer " << l << ' ' << w.rows() << ' ' << w.cols() << '\n';
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        out << (i == 0 && j == 0 ? "" : " ") << format_real(w(i, j));
      }
    }
    out << '\n';
    const auto& b = m.layers[l].bias;
    for (Eigen::Index i = 0; i < b.size(); ++i) out << (i == 0 ? "" : " ") << format_real(b(i));
    out << '\n';
  }
}

void write_model(const std::filesystem::path& path, const MlpModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_model(out, model);
}

namespace {

std::string expect_line(std::istream& in, const std::string& what) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("model file truncated: missing " + what);
  return line;
}

double parse_real(const std::string& token, const std::string& where) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
    throw FormatError("bad number '" + token + "' in " + where);
  }
  return v;
}

}  // namespace

MlpModel read_model(std::istream& in) {
  MlpModel m;
  if (expect_line(in, "header") != "lobmimic-mlp 1") {
    throw FormatError("not a version 1 lobmimic model file");
  }
  {
    std::istringstream ss(expect_line(in, "layers"));
    std::string key;
    std::size_t count = 0;
    if (!(ss >> key >> count) || key != "layers") throw FormatError("bad layers line");
    m.layer_sizes.resize(count);
    for (auto& n : m.layer_sizes) {
      if (!(ss >> n) || n <= 0) throw FormatError("bad layer size");
    }
    if (count < 2) throw FormatError("model needs at least two layers");
  }
  {
    std::istringstream ss(expect_line(in, "activation"));
    std::string key;
    std::string name;
    if (!(ss >> key >> name) || key != "activation") throw FormatError("bad activation line");
    try {
      m.hidden = parse_activation(name);
    } catch (const ConfigError& e) {
      throw FormatError(e.what());
    }
  }
  {
    std::istringstream ss(expect_line(in, "constants"));
    std::string key;
    std::string a;
    std::string b;
    std::string c;
    if (!(ss >> key >> a >> b >> c) || key != "constants") throw FormatError("bad constants line");
    m.constants = {parse_real(a, "constants"), parse_real(b, "constants"),
                   parse_real(c, "constants")};
  }
  for (std::size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) {
    const std::string where = "layer " + std::to_string(l);
    std::istringstream head(expect_line(in, where + " header"));
    std::string key;
    std::size_t index = 0;
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    if (!(head >> key >> index >> rows >> cols) || key != "layer" || index != l) {
      throw FormatError("bad header for " + where);
    }
    if (rows != m.layer_sizes[l + 1] || cols != m.layer_sizes[l]) {
      throw FormatError(where + " shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                        " inconsistent with layer sizes");
    }
    DenseLayer layer{Eigen::MatrixXd(rows, cols), Eigen::VectorXd(rows)};
    std::istringstream ws(expect_line(in, where + " weights"));
    std::string token;
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (!(ws >> token)) throw FormatError(where + " has too few weights");
        layer.weights(i, j) = parse_real(token, where + " weights");
      }
    }
    if (ws >> token) throw FormatError(where + " has too many weights");
    std::istringstream bs(expect_line(in, where + " biases"));
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (!(bs >> token)) throw FormatError(where + " has too few biases");
      layer.bias(i) = parse_real(token, where + " biases");
    }
    if (bs >> token) throw FormatError(where + " has too many biases");
    m.layers.push_back(std::move(layer));
  }
  if (m.layer_sizes.back() != 1) throw FormatError("model output layer must have one unit");
  return m;
}

MlpModel read_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DependencyError("cannot read model " + path.string());
  return read_model(in);
}

}  // namespace lobmimic
