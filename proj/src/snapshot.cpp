#include "d2dsim/snapshot.hpp"

#include <sstream>
#include <stdexcept>

#include "d2dsim/format.hpp"

namespace d2dsim {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    out.push_back(tok);
  }
  return out;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw std::invalid_argument("snapshot: line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

SnapshotDump make_snapshot(const SpatialRealization& real, const BidTable& bids,
                           const RetainedSet& retained, const Association& assoc,
                           double p_access, const RangePair& ranges,
                           std::uint64_t seed) {
  SnapshotDump snap;
  snap.policy_name = to_string(retained.policy);
  snap.p_access = p_access;
  snap.r_d2d = ranges.r_d2d;
  snap.d_exclusion = ranges.d_exclusion;
  snap.seed = seed;
  snap.window = real.window;
  snap.transmitters.reserve(static_cast<std::size_t>(real.n_tx()));
  for (int x = 0; x < real.n_tx(); ++x) {
    SnapshotDump::TxRecord tx;
    tx.x = real.transmitters[x].x;
    tx.y = real.transmitters[x].y;
    tx.bid = bids.values.empty() ? 0.0 : bids.values[static_cast<std::size_t>(x)];
    tx.retained = retained.on[static_cast<std::size_t>(x)] != 0;
    tx.cache = real.caches[static_cast<std::size_t>(x)].files();
    snap.transmitters.push_back(std::move(tx));
  }
  snap.receivers.reserve(static_cast<std::size_t>(real.n_rx()));
  for (int u = 0; u < real.n_rx(); ++u) {
    SnapshotDump::RxRecord rx;
    rx.x = real.receivers[u].x;
    rx.y = real.receivers[u].y;
    rx.request = real.requests[static_cast<std::size_t>(u)];
    rx.server = assoc.server_of_rx[static_cast<std::size_t>(u)];
    snap.receivers.push_back(rx);
  }
  return snap;
}

std::string serialize_snapshot(const SnapshotDump& snap) {
  std::string out = "D2DSIM_SNAPSHOT 1\n";
  out += "POLICY " + snap.policy_name + '\n';
  out += "PA " + format_double(snap.p_access) + '\n';
  out += "RD2D " + format_double(snap.r_d2d) + '\n';
  out += "DEXCL " + format_double(snap.d_exclusion) + '\n';
  out += "SEED " + std::to_string(snap.seed) + '\n';
  out += "WINDOW " + format_double(snap.window.x_min) + ' ' +
         format_double(snap.window.x_max) + ' ' + format_double(snap.window.y_min) +
         ' ' + format_double(snap.window.y_max) + ' ' + to_string(snap.window.boundary) +
         '\n';
  for (const auto& tx : snap.transmitters) {
    out += "TX " + format_double(tx.x) + ' ' + format_double(tx.y) + ' ' +
           format_double(tx.bid) + ' ' + (tx.retained ? "1" : "0") + ' ';
    if (tx.cache.empty()) {
      out += '-';
    } else {
      for (std::size_t i = 0; i < tx.cache.size(); ++i) {
        if (i > 0) {
          out += ',';
        }
        out += std::to_string(tx.cache[i]);
      }
    }
    out += '\n';
  }
  for (const auto& rx : snap.receivers) {
    out += "RX " + format_double(rx.x) + ' ' + format_double(rx.y) + ' ' +
           std::to_string(rx.request) + ' ' + std::to_string(rx.server) + '\n';
  }
  return out;
}

SnapshotDump parse_snapshot(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  SnapshotDump snap;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) {
      return false;
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    return true;
  };

  if (!next_line() || line != "D2DSIM_SNAPSHOT 1") {
    fail(1, "missing D2DSIM_SNAPSHOT 1 header");
  }
  while (next_line()) {
    if (line.empty()) {
      continue;
    }
    const auto tok = tokens(line);
    const std::string& tag = tok[0];
    try {
      if (tag == "POLICY" && tok.size() == 2) {
        snap.policy_name = tok[1];
      } else if (tag == "PA" && tok.size() == 2) {
        snap.p_access = parse_double(tok[1]);
      } else if (tag == "RD2D" && tok.size() == 2) {
        snap.r_d2d = parse_double(tok[1]);
      } else if (tag == "DEXCL" && tok.size() == 2) {
        snap.d_exclusion = parse_double(tok[1]);
      } else if (tag == "SEED" && tok.size() == 2) {
        snap.seed = static_cast<std::uint64_t>(std::stoull(tok[1]));
      } else if (tag == "WINDOW" && tok.size() == 6) {
        snap.window.x_min = parse_double(tok[1]);
        snap.window.x_max = parse_double(tok[2]);
        snap.window.y_min = parse_double(tok[3]);
        snap.window.y_max = parse_double(tok[4]);
        if (tok[5] == "plain") {
          snap.window.boundary = BoundaryMode::kPlain;
        } else if (tok[5] == "torus") {
          snap.window.boundary = BoundaryMode::kTorus;
        } else {
          fail(line_no, "unknown boundary mode '" + tok[5] + "'");
        }
      } else if (tag == "TX" && tok.size() == 6) {
        SnapshotDump::TxRecord tx;
        tx.x = parse_double(tok[1]);
        tx.y = parse_double(tok[2]);
        tx.bid = parse_double(tok[3]);
        tx.retained = parse_int(tok[4]) != 0;
        if (tok[5] != "-") {
          std::size_t start = 0;
          const std::string& list = tok[5];
          while (start <= list.size()) {
            const std::size_t pos = list.find(',', start);
            const std::string item =
                pos == std::string::npos ? list.substr(start) : list.substr(start, pos - start);
            tx.cache.push_back(static_cast<FileId>(parse_int(item)));
            if (pos == std::string::npos) {
              break;
            }
            start = pos + 1;
          }
        }
        snap.transmitters.push_back(std::move(tx));
      } else if (tag == "RX" && tok.size() == 5) {
        SnapshotDump::RxRecord rx;
        rx.x = parse_double(tok[1]);
        rx.y = parse_double(tok[2]);
        rx.request = static_cast<FileId>(parse_int(tok[3]));
        rx.server = static_cast<std::int32_t>(parse_int(tok[4]));
        snap.receivers.push_back(rx);
      } else {
        fail(line_no, "unrecognized record '" + line + "'");
      }
    } catch (const std::exception& e) {
      const std::string msg = e.what();
      if (msg.rfind("snapshot:", 0) == 0) {
        throw;
      }
      fail(line_no, msg);
    }
  }
  return snap;
}

}  // namespace d2dsim
