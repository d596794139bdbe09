#pragma once

#include "qsim/types.hpp"

#include <barrier>
#include <condition_variable>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>

namespace qsim {

/// Message transport between ranks. Implementations must provide rendezvous
/// semantics: exchange() returns on either side only after the full peer
/// buffer has been delivered, and barrier() releases all ranks together.
class Transport {
  public:
    virtual ~Transport() = default;

    /// Paired full-buffer swap between `self` and `peer`. Both sides must
    /// call with matching buffer sizes; each receives the other's send span.
    virtual void exchange(int self, int peer, std::span<const std::byte> send,
                          std::span<std::byte> recv) = 0;

    /// Global synchronisation point across all ranks.
    virtual void barrier() = 0;

    virtual int rank_count() const = 0;
};

/// Reference transport running every rank as an in-process worker thread.
/// Each unordered rank pair shares a rendezvous cell: the second arriver
/// copies both directions and releases the pair.
class InProcessTransport final : public Transport {
  public:
    explicit InProcessTransport(int rank_count);

    void exchange(int self, int peer, std::span<const std::byte> send,
                  std::span<std::byte> recv) override;
    void barrier() override;
    int rank_count() const override { return rank_count_; }

  private:
    struct Cell {
        std::mutex m;
        std::condition_variable cv;
        int arrived = 0;
        std::uint64_t round = 0;
        bool failed = false;
        std::span<const std::byte> send[2];
        std::span<std::byte> recv[2];
    };

    Cell& cell_for(int a, int b);

    int rank_count_;
    std::barrier<> barrier_;
    std::mutex cells_mutex_;
    std::unordered_map<std::uint64_t, std::unique_ptr<Cell>> cells_;
};

} // namespace qsim
