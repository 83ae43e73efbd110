#include "fnfpad/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <thread>

#include "fnfpad/codec.hpp"
#include "fnfpad/manifest.hpp"
#include "fnfpad/rng.hpp"

namespace fnfpad {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

// Frozen render constants per material (kSynthgenConfigVersion). Calibrated
// once against the acceptance directions, then left alone.
struct RenderConstants {
  std::array<double, 3> tone;    // channel reflectance/emission gains
  double hardness;               // ridge waveform squaring (0 = pure sine)
  double ridge_mult_flash;       // ridge visibility under flash (glare washout)
  double ridge_mult_nonflash;
  double artifact_flash;         // periodic artifact amplitude under flash
  double artifact_nonflash;      //   and under ambient light
  double artifact_period;        // px; screens use MaterialModel::grid_period
  double material_noise;         // per-channel texture noise at flash level
  double lobe_sigma_lo, lobe_sigma_hi;  // specular lobe extent, fraction of size
  std::array<double, 3> lobe_tint;      // chromatic cast of the specular lobe
};

const RenderConstants& constants_for(MaterialKind k) {
  static const RenderConstants genuine{
      {0.98, 0.80, 0.66}, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.25, 0.40, {1.0, 1.0, 1.0}};
  static const RenderConstants print{
      {0.92, 0.85, 0.78}, 1.5, 0.40, 0.50, 0.22, 0.065, 3.4, 0.06, 0.08, 0.13,
      {1.10, 0.92, 1.00}};
  static const RenderConstants screen{
      {0.88, 0.90, 0.96}, 0.8, 0.25, 0.60, 0.18, 0.05, 3.2, 0.040, 0.08, 0.13,
      {0.85, 0.95, 1.15}};
  static const RenderConstants molded{
      {0.95, 0.82, 0.72}, 4.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.040, 0.08, 0.13,
      {1.06, 1.00, 0.92}};
  switch (k) {
    case MaterialKind::genuine: return genuine;
    case MaterialKind::print: return print;
    case MaterialKind::screen: return screen;
    case MaterialKind::molded: return molded;
  }
  return genuine;
}

std::uint64_t kind_tag(MaterialKind k) {
  switch (k) {
    case MaterialKind::genuine: return 1;
    case MaterialKind::print: return 2;
    case MaterialKind::screen: return 3;
    case MaterialKind::molded: return 4;
  }
  return 1;
}

struct Wave {
  double fx, fy, amp, phase;
};

struct MicroDot {
  int x, y, radius;
};

// Everything sampled from the RNG before per-pixel rendering starts.
struct SceneParams {
  double theta0 = 0.0;
  double curve_xy = 0.0, curve_sq = 0.0;  // ridge-flow curvature
  double curve_cx = 0.0, curve_cy = 0.0;
  std::vector<Wave> warp;
  std::vector<Wave> amp_mod;
  double lobe_x = 0.0, lobe_y = 0.0, lobe_sx = 1.0, lobe_sy = 1.0;
  std::array<double, 3> grid_phase_x{}, grid_phase_y{};
  std::vector<MicroDot> dots;
  std::vector<double> sensor_noise;    // per channel-interleaved pixel
  std::vector<double> material_noise;  // unit-sigma fields, scaled at render
};

void gaussian_blur_inplace(std::vector<double>& field, int w, int h, double sigma) {
  if (sigma < 0.05) return;
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> kernel(static_cast<std::size_t>(radius) + 1);
  double norm = 0.0;
  for (int i = 0; i <= radius; ++i) {
    kernel[i] = std::exp(-0.5 * i * i / (sigma * sigma));
    norm += i == 0 ? kernel[i] : 2.0 * kernel[i];
  }
  for (double& k : kernel) k /= norm;

  std::vector<double> tmp(field.size());
  auto clampi = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double s = kernel[0] * field[static_cast<std::size_t>(y) * w + x];
      for (int i = 1; i <= radius; ++i)
        s += kernel[i] * (field[static_cast<std::size_t>(y) * w + clampi(x - i, w - 1)] +
                          field[static_cast<std::size_t>(y) * w + clampi(x + i, w - 1)]);
      tmp[static_cast<std::size_t>(y) * w + x] = s;
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double s = kernel[0] * tmp[static_cast<std::size_t>(clampi(y, h - 1)) * w + x];
      for (int i = 1; i <= radius; ++i)
        s += kernel[i] * (tmp[static_cast<std::size_t>(clampi(y - i, h - 1)) * w + x] +
                          tmp[static_cast<std::size_t>(clampi(y + i, h - 1)) * w + x]);
      field[static_cast<std::size_t>(y) * w + x] = s;
    }
}

double eval_waves(const std::vector<Wave>& waves, double x, double y, int size) {
  double s = 0.0;
  for (const Wave& w : waves)
    s += w.amp * std::sin(kTwoPi * (w.fx * x + w.fy * y) / static_cast<double>(size) + w.phase);
  return s;
}

RasterImage render_one(const GenSpec& spec, const MaterialModel& mat,
                       const RenderConstants& rc, const SceneParams& scene,
                       const IlluminationSettings& illum, bool is_flash,
                       const std::vector<double>& shaped_pattern) {
  const int n = spec.size;
  const double ridge_mult = is_flash ? rc.ridge_mult_flash : rc.ridge_mult_nonflash;

  // amplitude-modulated ridge field, then subsurface smoothing
  std::vector<double> pattern(shaped_pattern);
  gaussian_blur_inplace(pattern, n, n, mat.subsurface_sigma * illum.subsurface_factor);

  const double period = mat.grid_period > 0.0 ? mat.grid_period : rc.artifact_period;
  const double artifact_amp = is_flash ? rc.artifact_flash : rc.artifact_nonflash;
  const double lobe_strength = mat.specular_strength * illum.specular_factor;
  const double mat_noise = rc.material_noise * illum.artifact_factor;

  RasterImage img(n, n, 3);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const std::size_t pi = static_cast<std::size_t>(y) * n + x;
      const double lum = illum.ambient + illum.gain * ridge_mult * pattern[pi];

      const double ex = x - scene.lobe_x, ey = y - scene.lobe_y;
      const double lobe = lobe_strength * std::exp(-0.5 * (ex * ex / (scene.lobe_sx * scene.lobe_sx) +
                                                           ey * ey / (scene.lobe_sy * scene.lobe_sy)));

      for (int c = 0; c < 3; ++c) {
        double artifact = 0.0;
        if (artifact_amp > 0.0) {
          if (mat.kind == MaterialKind::screen) {
            artifact = artifact_amp * 0.5 *
                       (std::cos(kTwoPi * x / period + scene.grid_phase_x[c]) +
                        std::cos(kTwoPi * y / period + scene.grid_phase_y[c]));
          } else {  // print halftone
            artifact = artifact_amp *
                       std::cos(kTwoPi * x / period + scene.grid_phase_x[c]) *
                       std::cos(kTwoPi * y / period + scene.grid_phase_y[c]);
          }
        }
        double v = rc.tone[c] * lum + artifact + lobe * rc.lobe_tint[c];
        v *= mat.ink_channel_skew[c];
        if (mat_noise > 0.0) v += mat_noise * scene.material_noise[pi * 3 + c];
        v += spec.sensor_noise * illum.noise_factor * scene.sensor_noise[pi * 3 + c];
        img.at(x, y, c) = v;
      }
    }
  }

  // oil micro-highlights: small saturated plateaus; the illumination factor
  // scales how many of the sampled sites light up
  const std::size_t lit_dots = static_cast<std::size_t>(
      std::lround(illum.highlight_density_factor * static_cast<double>(scene.dots.size())));
  for (std::size_t k = 0; k < std::min(lit_dots, scene.dots.size()); ++k) {
    const MicroDot& d = scene.dots[k];
    for (int dy = -d.radius; dy <= d.radius; ++dy)
      for (int dx = -d.radius; dx <= d.radius; ++dx) {
        if (dx * dx + dy * dy > d.radius * d.radius) continue;
        const int px = d.x + dx, py = d.y + dy;
        if (px < 0 || py < 0 || px >= n || py >= n) continue;
        for (int c = 0; c < 3; ++c) img.at(px, py, c) = 1.0;
      }
  }

  // clip and quantize to the 8-bit grid the codecs use
  for (double& v : img.data) {
    const double c = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    v = std::round(c * 255.0) / 255.0;
  }
  return img;
}

}  // namespace

std::string to_string(MaterialKind k) {
  switch (k) {
    case MaterialKind::genuine: return "genuine";
    case MaterialKind::print: return "print";
    case MaterialKind::screen: return "screen";
    case MaterialKind::molded: return "molded";
  }
  return "genuine";
}

MaterialKind material_kind_from_string(const std::string& s) {
  if (s == "genuine") return MaterialKind::genuine;
  if (s == "print") return MaterialKind::print;
  if (s == "screen") return MaterialKind::screen;
  if (s == "molded") return MaterialKind::molded;
  throw std::invalid_argument("unknown material: " + s +
                              " (valid: genuine, print, screen, molded)");
}

MaterialModel MaterialModel::defaults(MaterialKind k) {
  MaterialModel m;
  m.kind = k;
  switch (k) {
    case MaterialKind::genuine:
      m.specular_strength = 0.03;
      m.subsurface_sigma = 1.2;
      m.amplitude_cv = 0.35;
      m.micro_highlight_density = 0.5;
      break;
    case MaterialKind::print:
      m.specular_strength = 0.80;
      m.subsurface_sigma = 0.4;
      m.amplitude_cv = 0.06;
      m.ink_channel_skew = {1.06, 0.94, 1.02};
      break;
    case MaterialKind::screen:
      m.specular_strength = 0.80;
      m.subsurface_sigma = 0.3;
      m.amplitude_cv = 0.08;
      m.grid_period = 3.2;
      break;
    case MaterialKind::molded:
      m.specular_strength = 0.85;
      m.subsurface_sigma = 0.25;
      m.amplitude_cv = 0.04;
      break;
  }
  return m;
}

PairedCapture generate_pair(const GenSpec& spec, const MaterialModel& mat) {
  if (spec.size < 128) throw std::invalid_argument("generate_pair: size must be >= 128");
  if (spec.ridge_period < 4.0 || spec.ridge_period > 32.0)
    throw std::invalid_argument("generate_pair: ridge_period must be in [4, 32]");
  if (mat.specular_strength < 0.0 || mat.subsurface_sigma < 0.0 || mat.amplitude_cv < 0.0 ||
      mat.micro_highlight_density < 0.0)
    throw std::invalid_argument("generate_pair: negative material parameter");

  const RenderConstants& rc = constants_for(mat.kind);
  const int n = spec.size;

  // identity stream: ridge layout shared by flash/nonflash and, for a given
  // seed, by every material (the same finger being spoofed)
  SplitMix64 id = SplitMix64::substream(spec.seed, 0x49444E54ULL);
  SceneParams scene;
  scene.theta0 = id.uniform(0.0, kTwoPi / 2.0);
  scene.curve_xy = id.uniform(-0.35, 0.35);
  scene.curve_sq = id.uniform(-0.35, 0.35);
  scene.curve_cx = id.uniform(0.3, 0.7) * n;
  scene.curve_cy = id.uniform(0.3, 0.7) * n;
  for (int k = 0; k < spec.warp_waves; ++k) {
    Wave w;
    w.fx = id.uniform(-1.2, 1.2);
    w.fy = id.uniform(-1.2, 1.2);
    w.amp = id.uniform(1.0, std::max(1.0, spec.warp_amplitude));
    w.phase = id.uniform(0.0, kTwoPi);
    scene.warp.push_back(w);
  }
  for (int k = 0; k < 2; ++k) {
    Wave w;
    w.fx = id.uniform(-1.5, 1.5);
    w.fy = id.uniform(-1.5, 1.5);
    w.amp = 0.5;
    w.phase = id.uniform(0.0, kTwoPi);
    scene.amp_mod.push_back(w);
  }

  // material stream: everything presentation-specific
  SplitMix64 ms = SplitMix64::substream(spec.seed ^ kind_tag(mat.kind), 0x4D41545FULL);
  scene.lobe_x = ms.uniform(0.25, 0.75) * n;
  scene.lobe_y = ms.uniform(0.25, 0.75) * n;
  scene.lobe_sx = ms.uniform(rc.lobe_sigma_lo, rc.lobe_sigma_hi) * n;
  scene.lobe_sy = ms.uniform(rc.lobe_sigma_lo, rc.lobe_sigma_hi) * n;
  // common grid phase with a small per-channel shift: the luminance grid
  // stays strong while channels decorrelate (RGB subpixel structure)
  const double base_phase_x = ms.uniform(0.0, kTwoPi);
  const double base_phase_y = ms.uniform(0.0, kTwoPi);
  for (int c = 0; c < 3; ++c) {
    scene.grid_phase_x[c] = base_phase_x + ms.uniform(-0.5, 0.5);
    scene.grid_phase_y[c] = base_phase_y + ms.uniform(-0.5, 0.5);
  }

  // base ridge pattern (pre-blur), shared by both illuminations
  const double c0 = std::cos(scene.theta0), s0 = std::sin(scene.theta0);
  std::vector<double> shaped(static_cast<std::size_t>(n) * n);
  const double th = rc.hardness > 0.0 ? std::tanh(rc.hardness) : 1.0;
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const double ex = (x - scene.curve_cx) / n, ey = (y - scene.curve_cy) / n;
      const double bend = scene.curve_xy * ex * ey * n + scene.curve_sq * (ex * ex - ey * ey) * n;
      const double u = x * c0 + y * s0 + bend + eval_waves(scene.warp, x, y, n);
      double r = std::sin(kTwoPi * u / spec.ridge_period);
      if (rc.hardness > 0.0) r = std::tanh(rc.hardness * r) / th;
      const double mod = eval_waves(scene.amp_mod, x, y, n);  // in [-1, 1]
      const double amp = std::max(0.01, 0.16 * (1.0 + mat.amplitude_cv * 2.0 * mod));
      shaped[static_cast<std::size_t>(y) * n + x] = amp * r;
    }
  }

  // micro-highlight sites on ridge crests
  const int dot_count =
      static_cast<int>(std::lround(mat.micro_highlight_density * n * n / 1000.0));
  for (int k = 0; k < dot_count; ++k) {
    int px = 0, py = 0;
    for (int attempt = 0; attempt < 50; ++attempt) {
      px = static_cast<int>(ms.next_double() * n);
      py = static_cast<int>(ms.next_double() * n);
      if (shaped[static_cast<std::size_t>(py) * n + px] > 0.0) break;
    }
    const int radius = 2 + static_cast<int>(ms.next_double() * 2.0);  // 2..3
    scene.dots.push_back({px, py, radius});
  }

  // noise fields, shared between illuminations and scaled at render time
  scene.sensor_noise.resize(static_cast<std::size_t>(n) * n * 3);
  SplitMix64 sn = SplitMix64::substream(spec.seed ^ kind_tag(mat.kind), 0x4E4F495345ULL);
  for (double& v : scene.sensor_noise) v = sn.next_gaussian();
  if (rc.material_noise > 0.0) {
    scene.material_noise.resize(scene.sensor_noise.size());
    SplitMix64 mn = SplitMix64::substream(spec.seed ^ kind_tag(mat.kind), 0x504149ULL);
    for (double& v : scene.material_noise) v = mn.next_gaussian();
  } else {
    scene.material_noise.assign(static_cast<std::size_t>(n) * n * 3, 0.0);
  }

  PairedCapture pair;
  pair.flash = render_one(spec, mat, rc, scene, spec.flash, true, shaped);
  pair.nonflash = render_one(spec, mat, rc, scene, spec.nonflash, false, shaped);
  pair.label.sample_class =
      mat.kind == MaterialKind::genuine ? SampleClass::genuine : SampleClass::spoof;
  switch (mat.kind) {
    case MaterialKind::genuine: pair.label.pai_type = PaiType::none; break;
    case MaterialKind::print: pair.label.pai_type = PaiType::print; break;
    case MaterialKind::screen: pair.label.pai_type = PaiType::screen; break;
    case MaterialKind::molded: pair.label.pai_type = PaiType::molded; break;
  }
  return pair;
}

DatasetResult generate_dataset(const std::string& out_dir, const ClassCounts& counts,
                               std::uint64_t seed, const GenSpec& base,
                               const std::string& image_format, int jobs) {
  if (image_format != "ppm" && image_format != "png")
    throw std::invalid_argument("generate_dataset: format must be ppm or png");
  if (jobs < 1) jobs = 1;
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir);

  struct Job {
    MaterialKind kind;
    int index;
    std::string pair_id;
  };
  std::vector<Job> todo;
  auto add_class = [&](MaterialKind k, int count) {
    for (int i = 0; i < count; ++i) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%04d", i);
      todo.push_back({k, i, to_string(k) + "_" + buf});
    }
  };
  add_class(MaterialKind::genuine, counts.genuine);
  add_class(MaterialKind::print, counts.print);
  add_class(MaterialKind::screen, counts.screen);
  add_class(MaterialKind::molded, counts.molded);

  std::vector<ManifestEntry> manifest;
  // batches: parallel generation, serial writes, deterministic order
  for (std::size_t start = 0; start < todo.size(); start += static_cast<std::size_t>(jobs)) {
    const std::size_t end = std::min(todo.size(), start + static_cast<std::size_t>(jobs));
    std::vector<PairedCapture> slots(end - start);
    auto work = [&](std::size_t j) {
      GenSpec spec = base;
      spec.seed = seed ^ static_cast<std::uint64_t>(todo[start + j].index);
      slots[j] = generate_pair(spec, MaterialModel::defaults(todo[start + j].kind));
    };
    if (jobs == 1 || end - start == 1) {
      for (std::size_t j = 0; j < slots.size(); ++j) work(j);
    } else {
      std::vector<std::thread> threads;
      for (std::size_t j = 0; j < slots.size(); ++j) threads.emplace_back(work, j);
      for (auto& t : threads) t.join();
    }
    for (std::size_t j = 0; j < slots.size(); ++j) {
      const Job& job = todo[start + j];
      const std::string flash_name = job.pair_id + "_flash." + image_format;
      const std::string nonflash_name = job.pair_id + "_nonflash." + image_format;
      save_image(out_dir + "/" + flash_name, slots[j].flash);
      save_image(out_dir + "/" + nonflash_name, slots[j].nonflash);

      ManifestEntry entry;
      entry.label = slots[j].label;
      entry.label.pair_id = job.pair_id;
      entry.label.subject_id = "subj" + std::to_string(job.index % 20);
      entry.label.session = 1 + job.index % 2;
      entry.flash_path = flash_name;
      entry.nonflash_path = nonflash_name;
      manifest.push_back(std::move(entry));
    }
  }

  std::sort(manifest.begin(), manifest.end(), [](const ManifestEntry& a, const ManifestEntry& b) {
    return a.label.pair_id < b.label.pair_id;
  });
  DatasetResult res;
  res.manifest_path = out_dir + "/manifest.jsonl";
  res.pairs_written = static_cast<int>(manifest.size());
  write_manifest(res.manifest_path, manifest);
  return res;
}

}  // namespace fnfpad
