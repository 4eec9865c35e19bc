//! Open-addressing table of pattern keys used on the hot duplicate-detection
//! paths.
//!
//! Keys are 64-bit: either the exact Lehmer rank of a pattern, or a
//! fingerprint of the standardized word for long patterns. Each slot also
//! carries a caller-defined payload (the first selector that produced the
//! key) so a duplicate can be reported without rescanning. Deletion uses
//! backward shifting, which keeps probe sequences intact for the search
//! journal.

const EMPTY: u64 = 0;
const MAX_LOAD_NUM: usize = 1;
const MAX_LOAD_DEN: usize = 2;

#[derive(Clone, Debug)]
pub struct PatternIndex {
    keys: Vec<u64>,
    payloads: Vec<u64>,
    mask: usize,
    len: usize,
}

#[inline]
fn mix(key: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = key.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Lookup outcome for [`PatternIndex::insert_or_probe`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Probe {
    Inserted,
    Present { payload: u64 },
}

impl PatternIndex {
    pub fn with_capacity(expected: usize) -> Self {
        let want = (expected.max(8) * MAX_LOAD_DEN / MAX_LOAD_NUM).next_power_of_two();
        Self {
            keys: vec![EMPTY; want],
            payloads: vec![0; want],
            mask: want - 1,
            len: 0,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Internal keys are shifted by one so that zero marks an empty slot;
    /// `u64::MAX` is therefore reserved and aliases key 0. Lehmer ranks never
    /// reach it and [`fingerprint`] never returns it.
    #[inline]
    fn stored(key: u64) -> u64 {
        key.wrapping_add(1).max(1)
    }

    #[inline]
    fn home(&self, stored: u64) -> usize {
        mix(stored) as usize & self.mask
    }

    fn grow(&mut self) {
        let new_cap = self.keys.len() * 2;
        let old_keys = std::mem::replace(&mut self.keys, vec![EMPTY; new_cap]);
        let old_payloads = std::mem::replace(&mut self.payloads, vec![0; new_cap]);
        self.mask = new_cap - 1;
        for (k, p) in old_keys.into_iter().zip(old_payloads) {
            if k != EMPTY {
                let mut i = self.home(k);
                while self.keys[i] != EMPTY {
                    i = (i + 1) & self.mask;
                }
                self.keys[i] = k;
                self.payloads[i] = p;
            }
        }
    }

    /// Inserts `key` unless already present.
    #[inline]
    pub fn insert_or_probe(&mut self, key: u64, payload: u64) -> Probe {
        self.insert_with(key, payload, |_| true)
    }

    /// Like [`insert_or_probe`](Self::insert_or_probe), but a slot holding an
    /// equal key only counts as a hit when `same(stored_payload)` confirms
    /// it. Used when keys are fingerprints that may collide.
    pub fn insert_with(&mut self, key: u64, payload: u64, mut same: impl FnMut(u64) -> bool) -> Probe {
        if (self.len + 1) * MAX_LOAD_DEN > self.keys.len() * MAX_LOAD_NUM {
            self.grow();
        }
        let s = Self::stored(key);
        let mut i = self.home(s);
        loop {
            let k = self.keys[i];
            if k == EMPTY {
                self.keys[i] = s;
                self.payloads[i] = payload;
                self.len += 1;
                return Probe::Inserted;
            }
            if k == s && same(self.payloads[i]) {
                return Probe::Present {
                    payload: self.payloads[i],
                };
            }
            i = (i + 1) & self.mask;
        }
    }

    pub fn contains(&self, key: u64) -> bool {
        let s = Self::stored(key);
        let mut i = self.home(s);
        loop {
            match self.keys[i] {
                EMPTY => return false,
                k if k == s => return true,
                _ => i = (i + 1) & self.mask,
            }
        }
    }

    /// Removes one entry for `key`; returns whether it was present.
    pub fn remove(&mut self, key: u64) -> bool {
        let s = Self::stored(key);
        let mut i = self.home(s);
        loop {
            match self.keys[i] {
                EMPTY => return false,
                k if k == s => break,
                _ => i = (i + 1) & self.mask,
            }
        }
        // Backward-shift deletion.
        let mut hole = i;
        let mut j = (i + 1) & self.mask;
        loop {
            let k = self.keys[j];
            if k == EMPTY {
                break;
            }
            let home = self.home(k);
            // Move k into the hole if its home is not cyclically in (hole, j].
            let dist_hole = hole.wrapping_sub(home) & self.mask;
            let dist_j = j.wrapping_sub(home) & self.mask;
            if dist_hole < dist_j {
                self.keys[hole] = k;
                self.payloads[hole] = self.payloads[j];
                hole = j;
            }
            j = (j + 1) & self.mask;
        }
        self.keys[hole] = EMPTY;
        self.len -= 1;
        true
    }

    pub fn clear(&mut self) {
        self.keys.fill(EMPTY);
        self.len = 0;
    }
}

/// FNV-1a style fingerprint of a standardized word, finished with a strong
/// mixer.
#[inline]
pub fn fingerprint(word: impl IntoIterator<Item = u32>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for v in word {
        h ^= v as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    mix(h).min(u64::MAX - 1)
}
