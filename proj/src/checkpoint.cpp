#include "emoret/checkpoint.hpp"

#include <fstream>

#include "emoret/errors.hpp"
#include "emoret/wire.hpp"

namespace emoret {

namespace {

constexpr char kMagic[4] = {'E', 'M', 'R', '1'};
constexpr std::uint32_t kVersion = 1;

void put_net(std::ostream& os, const NamedNet& n) {
  wire::put_str(os, n.name);
  wire::put_u32(os, static_cast<std::uint32_t>(n.net.layers.size()));
  for (const auto& l : n.net.layers) {
    wire::put_u32(os, static_cast<std::uint32_t>(l.weight.rows));
    wire::put_u32(os, static_cast<std::uint32_t>(l.weight.cols));
    os.put(static_cast<char>(l.activation));
  }
  for (const auto& l : n.net.layers) {
    wire::put_f64_block(os, l.weight.data);
    wire::put_f64_block(os, l.bias);
  }
}

NamedNet get_net(std::istream& is) {
  NamedNet n;
  n.name = wire::get_str(is);
  const std::uint32_t nl = wire::get_u32(is);
  n.net.layers.resize(nl);
  for (auto& l : n.net.layers) {
    const std::uint32_t r = wire::get_u32(is);
    const std::uint32_t c = wire::get_u32(is);
    const int act = is.get();
    if (act != 0 && act != 1) throw ConfigError("checkpoint: bad activation id");
    l.weight = Matrix(r, c);
    l.bias.assign(c, 0.0);
    l.activation = static_cast<Activation>(act);
  }
  for (auto& l : n.net.layers) {
    wire::get_f64_block(is, l.weight.data);
    wire::get_f64_block(is, std::span<double>(l.bias));
  }
  return n;
}

void put_opt(std::ostream& os, const AdamWState& s) {
  wire::put_f64(os, s.cfg.lr);
  wire::put_f64(os, s.cfg.beta1);
  wire::put_f64(os, s.cfg.beta2);
  wire::put_f64(os, s.cfg.eps);
  wire::put_f64(os, s.cfg.weight_decay);
  wire::put_u64(os, s.step);
  wire::put_u32(os, static_cast<std::uint32_t>(s.m_w.size()));
  for (std::size_t l = 0; l < s.m_w.size(); ++l) {
    wire::put_u32(os, static_cast<std::uint32_t>(s.m_w[l].rows));
    wire::put_u32(os, static_cast<std::uint32_t>(s.m_w[l].cols));
    wire::put_f64_block(os, s.m_w[l].data);
    wire::put_f64_block(os, s.v_w[l].data);
    wire::put_f64_block(os, s.m_b[l]);
    wire::put_f64_block(os, s.v_b[l]);
  }
}

AdamWState get_opt(std::istream& is) {
  AdamWState s;
  s.cfg.lr = wire::get_f64(is);
  s.cfg.beta1 = wire::get_f64(is);
  s.cfg.beta2 = wire::get_f64(is);
  s.cfg.eps = wire::get_f64(is);
  s.cfg.weight_decay = wire::get_f64(is);
  s.step = wire::get_u64(is);
  const std::uint32_t nl = wire::get_u32(is);
  for (std::uint32_t l = 0; l < nl; ++l) {
    const std::uint32_t r = wire::get_u32(is);
    const std::uint32_t c = wire::get_u32(is);
    Matrix m(r, c), v(r, c);
    wire::get_f64_block(is, m.data);
    wire::get_f64_block(is, v.data);
    std::vector<double> mb(c, 0.0), vb(c, 0.0);
    wire::get_f64_block(is, std::span<double>(mb));
    wire::get_f64_block(is, std::span<double>(vb));
    s.m_w.push_back(std::move(m));
    s.v_w.push_back(std::move(v));
    s.m_b.push_back(std::move(mb));
    s.v_b.push_back(std::move(vb));
  }
  return s;
}

}  // namespace

const ProjectionNet& Checkpoint::net(const std::string& name) const {
  for (const auto& n : nets) {
    if (n.name == name) return n.net;
  }
  throw ConfigError("checkpoint has no net named '" + name + "'");
}

bool Checkpoint::has_net(const std::string& name) const {
  for (const auto& n : nets) {
    if (n.name == name) return true;
  }
  return false;
}

void save_checkpoint(const std::string& path, const Checkpoint& c) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open checkpoint for writing: " + path);
  os.write(kMagic, 4);
  wire::put_u32(os, kVersion);
  wire::put_u32(os, static_cast<std::uint32_t>(c.nets.size()));
  for (const auto& n : c.nets) put_net(os, n);
  os.put(c.has_train_state ? 1 : 0);
  if (c.has_train_state) {
    wire::put_u32(os, c.epoch);
    wire::put_str(os, c.rng_state);
    wire::put_u32(os, c.best_epoch);
    wire::put_f64(os, c.best_metric);
    wire::put_u32(os, c.epochs_since_improve);
    for (const auto& o : c.opt) put_opt(os, o);
    wire::put_u32(os, static_cast<std::uint32_t>(c.best_nets.size()));
    for (const auto& n : c.best_nets) put_net(os, n);
  }
  if (!os) throw std::runtime_error("failed writing checkpoint: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open checkpoint: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::string(magic, 4) != std::string(kMagic, 4)) {
    throw ConfigError("not a checkpoint file (bad magic): " + path);
  }
  const std::uint32_t version = wire::get_u32(is);
  if (version != kVersion) {
    throw ConfigError("unsupported checkpoint version " + std::to_string(version));
  }
  Checkpoint c;
  const std::uint32_t nn = wire::get_u32(is);
  for (std::uint32_t i = 0; i < nn; ++i) c.nets.push_back(get_net(is));
  const int flag = is.get();
  if (flag != 0 && flag != 1) throw ConfigError("checkpoint: bad state flag");
  c.has_train_state = (flag == 1);
  if (c.has_train_state) {
    c.epoch = wire::get_u32(is);
    c.rng_state = wire::get_str(is);
    c.best_epoch = wire::get_u32(is);
    c.best_metric = wire::get_f64(is);
    c.epochs_since_improve = wire::get_u32(is);
    for (std::uint32_t i = 0; i < nn; ++i) c.opt.push_back(get_opt(is));
    const std::uint32_t nb = wire::get_u32(is);
    for (std::uint32_t i = 0; i < nb; ++i) c.best_nets.push_back(get_net(is));
  }
  return c;
}

}  // namespace emoret
