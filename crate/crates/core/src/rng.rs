//! Per-replication random streams.
//!
//! Every replication draws from its own ChaCha8 stream: the key comes from
//! the master seed and the 64-bit stream id is the replication index. A
//! replication's draws are therefore fixed by `(seed, index)` alone, whatever
//! order or thread the replications run on.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Stream = ChaCha8Rng;

pub fn replication_stream(seed: u64, replication: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replication);
    rng
}
