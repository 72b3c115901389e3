//! SplitMix64 stream with small exact samplers.
//!
//! The stream is defined by its arithmetic alone, so any implementation of
//! the same recurrence reproduces the same samples.

use crate::rational::{int, rat, Rational};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Child stream keyed by a label; used to give each trial its own seed.
    pub fn derive(seed: u64, label: &str) -> Self {
        let mut h = seed ^ 0x243F_6A88_85A3_08D3;
        for b in label.bytes() {
            h = mix(h ^ u64::from(b));
        }
        Self::new(h)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        mix(self.state)
    }

    /// Uniform in `0..n` (rejection sampling, no modulo bias).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    pub fn f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn small_int(&mut self, bound: i64) -> Rational {
        int(self.range_i64(-bound, bound))
    }

    pub fn nonzero_int(&mut self, bound: i64) -> Rational {
        loop {
            let k = self.range_i64(-bound, bound);
            if k != 0 {
                return int(k);
            }
        }
    }

    /// `a/b` with `|a| ≤ num`, `1 ≤ b ≤ den`.
    pub fn small_rat(&mut self, num: i64, den: i64) -> Rational {
        rat(self.range_i64(-num, num), self.range_i64(1, den))
    }

    pub fn nonzero_rat(&mut self, num: i64, den: i64) -> Rational {
        loop {
            let a = self.range_i64(-num, num);
            if a != 0 {
                return rat(a, self.range_i64(1, den));
            }
        }
    }

    pub fn rat_vec(&mut self, len: usize, num: i64, den: i64) -> Vec<Rational> {
        (0..len).map(|_| self.small_rat(num, den)).collect()
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }
}

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
