#pragma once

#include "qsim/circuit.hpp"
#include "qsim/register.hpp"
#include "qsim/transport.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qsim {

/// Pair-exchange strategy for gates on qubits owned by the rank-id bits.
///   FullClone    - swap entire partitions; one message per rank per gate,
///                  2x memory.
///   HalfExchange - two half-partition swaps; two messages per rank per
///                  gate, 1.5x memory.
///   PerAmplitude - per-block swaps (default block: one amplitude); many
///                  messages, O(1) buffer.
enum class Strategy { FullClone, HalfExchange, PerAmplitude };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

/// Contiguous equal split of a 2^n amplitude vector over 2^k ranks. Rank r
/// owns global indices [r * 2^(n-k), (r+1) * 2^(n-k)). Gates on qubits
/// below n-k are rank-local; higher qubits address the rank id and need
/// communication.
struct PartitionPlan {
    int num_qubits = 0;      // n, counted on the flattened vector
    int rank_count_log2 = 0; // k
    Strategy strategy = Strategy::FullClone;
    std::uint64_t block_amps = 1; // PerAmplitude message granularity

    int rank_count() const { return 1 << rank_count_log2; }
    int local_qubits() const { return num_qubits - rank_count_log2; }
    std::uint64_t local_len() const {
        return std::uint64_t{1} << local_qubits();
    }
    std::uint64_t global_lo(int rank) const {
        return static_cast<std::uint64_t>(rank) * local_len();
    }
};

PartitionPlan partition(int num_qubits, int rank_count_log2, Strategy strategy);

/// True iff a gate on `target` crosses rank boundaries: target >= n - k.
bool needs_communication(const PartitionPlan& plan, int target);

/// The rank holding the partner amplitudes for a communicated gate:
/// rank XOR 2^(target - (n-k)). An involution with no fixed point.
int pair_rank(const PartitionPlan& plan, int rank, int target);

/// One rank's share of the global amplitude vector plus its exchange buffer
/// (sized by the plan's strategy).
struct RankState {
    int rank = 0;
    AmpVector local;
    std::vector<std::byte> exchange_buffer;
};

/// Exact per-rank communication counters plus exchange rounds per applied
/// gate. Deterministic given plan, gate sequence and precision.
struct CommStats {
    std::vector<std::uint64_t> messages_sent; // indexed by rank
    std::vector<std::uint64_t> bytes_sent;    // indexed by rank
    std::vector<std::uint32_t> exchange_rounds; // indexed by gate

    std::uint64_t total_messages() const;
    std::uint64_t total_bytes() const;
    std::uint64_t communicated_gates() const;
    void merge(const CommStats& other);
};

/// A gate lowered onto the flat vector: control qubits as an index mask.
/// Density-matrix circuits lower to two of these per logical gate.
struct FlatGateOp {
    std::uint64_t control_mask = 0;
    int target = 0;
    GateMatrix matrix;
};

std::vector<FlatGateOp> flatten_circuit(const Circuit& circuit,
                                        RegisterKind kind);

/// Allocates all ranks for a plan in the zero state. Exchange buffers are
/// sized by the strategy (the modeled memory numbers count exactly this
/// layout).
std::vector<RankState> make_ranks(const PartitionPlan& plan,
                                  Precision precision);

void init_ranks_zero(std::vector<RankState>& ranks);

/// Concatenates the rank partitions into a single register (for tests and
/// result extraction).
Register gather(const std::vector<RankState>& ranks, const PartitionPlan& plan,
                RegisterKind kind);

/// Progress hooks for the timing protocol; see bench.hpp for the emitter.
class RunObserver {
  public:
    virtual ~RunObserver() = default;
    virtual void on_clock_start() {}
    virtual void on_circuit_done() {}
    virtual void on_post_barrier() {}
    virtual void on_clock_stop() {}
};

/// Runs a lowered gate sequence over existing ranks, one worker thread per
/// rank, bulk-synchronous with an inter-gate barrier. Every rank applies
/// local gates independently; communicated gates run the plan's exchange
/// strategy. Optionally reports the wall time of strictly the gate loop
/// (clock started once all ranks are ready, stopped after the final global
/// barrier).
CommStats run_gate_ops(std::vector<RankState>& ranks,
                       const PartitionPlan& plan,
                       std::span<const FlatGateOp> ops, Transport& transport,
                       int workers = 1, RunObserver* observer = nullptr,
                       double* gate_seconds = nullptr);

/// Single-gate form of run_gate_ops; returns that gate's counter deltas.
CommStats apply_gate_distributed(std::vector<RankState>& ranks,
                                 const PartitionPlan& plan,
                                 const std::vector<int>& controls, int target,
                                 const GateMatrix& g, Transport& transport,
                                 int workers = 1);

struct DistributedRunResult {
    std::vector<RankState> ranks;
    CommStats stats;
    double gate_seconds = 0.0;
};

/// Allocate + init + run a circuit under a plan. The final global state
/// equals single-rank execution of the same circuit.
DistributedRunResult run_circuit_distributed(const Circuit& circuit,
                                             const PartitionPlan& plan,
                                             Transport& transport,
                                             Precision precision,
                                             RegisterKind kind,
                                             int workers = 1);

/// Node-level memory budget for the strategy/precision pair.
struct MemoryModel {
    std::uint64_t node_bytes = 0;
    std::uint64_t overhead_bytes = std::uint64_t{50} << 20; // 50 MiB
    Strategy strategy = Strategy::FullClone;
    Precision precision = Precision::Double;
};

/// Modeled peak bytes per rank: partition plus exchange buffer.
/// FullClone:    2.0 x amp_bytes x 2^(n-k)
/// HalfExchange: 1.5 x amp_bytes x 2^(n-k)
/// PerAmplitude: amp_bytes x (2^(n-k) + block)
std::uint64_t modeled_bytes_per_rank(int num_qubits, int rank_count_log2,
                                     Strategy strategy, Precision precision,
                                     std::uint64_t block_amps = 1);

/// Largest n whose per-rank modeled bytes fit in node_bytes - overhead on
/// 2^k ranks; 0 when nothing fits.
int max_qubits(const MemoryModel& model, int rank_count_log2);

} // namespace qsim
