//! Counter-based random streams built on Philox4x32-10 (Salmon et al.,
//! "Parallel random numbers: as easy as 1, 2, 3", SC'11).
//!
//! A stream is addressed by `(seed, stream, substream)`; the 128-bit Philox
//! counter is `[block_lo, block_hi | substream, stream_lo, stream_hi]` and the
//! key is the 64-bit seed. Identical addresses give identical draws on every
//! platform and independent of scheduling.

const M0: u32 = 0xD251_1F53;
const M1: u32 = 0xCD9E_8D57;
const W0: u32 = 0x9E37_79B9;
const W1: u32 = 0xBB67_AE85;

#[inline]
fn mulhilo(a: u32, b: u32) -> (u32, u32) {
    let p = u64::from(a) * u64::from(b);
    ((p >> 32) as u32, p as u32)
}

/// One Philox4x32 block with 10 rounds.
pub fn philox4x32_10(counter: [u32; 4], key: [u32; 2]) -> [u32; 4] {
    let mut c = counter;
    let mut k = key;
    for round in 0..10 {
        if round > 0 {
            k[0] = k[0].wrapping_add(W0);
            k[1] = k[1].wrapping_add(W1);
        }
        let (hi0, lo0) = mulhilo(M0, c[0]);
        let (hi1, lo1) = mulhilo(M1, c[2]);
        c = [hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0];
    }
    c
}

/// Sequential reader over one `(seed, stream, substream)` address.
#[derive(Clone, Debug)]
pub struct StreamRng {
    key: [u32; 2],
    stream: u64,
    substream: u32,
    block: u32,
    buffer: [u32; 4],
    used: usize,
}

impl StreamRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self::with_substream(seed, stream, 0)
    }

    pub fn with_substream(seed: u64, stream: u64, substream: u32) -> Self {
        StreamRng {
            key: [seed as u32, (seed >> 32) as u32],
            stream,
            substream,
            block: 0,
            buffer: [0; 4],
            used: 4,
        }
    }

    fn refill(&mut self) {
        let ctr = [
            self.block,
            self.substream,
            self.stream as u32,
            (self.stream >> 32) as u32,
        ];
        self.buffer = philox4x32_10(ctr, self.key);
        self.block = self
            .block
            .checked_add(1)
            .expect("random stream exhausted (2^32 blocks)");
        self.used = 0;
    }

    pub fn next_u32(&mut self) -> u32 {
        if self.used == 4 {
            self.refill();
        }
        let v = self.buffer[self.used];
        self.used += 1;
        v
    }

    pub fn next_u64(&mut self) -> u64 {
        let lo = u64::from(self.next_u32());
        let hi = u64::from(self.next_u32());
        lo | (hi << 32)
    }

    /// Uniform in `[0, 1)` with 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// `true` with probability `p`; exact at `p = 0` and `p = 1`.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    /// Uniform in `0..bound` by rejection; `bound > 0`.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}
