use serde::Serialize;

use crate::caps::Caps;
use crate::error::{NawError, Result};

/// −1 mod q written as a sum of `m` k-th powers, with `m` minimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerRepresentation {
    pub k: u32,
    pub q: u64,
    pub m: usize,
    /// Bases in 0..q, sorted decreasingly.
    pub witness: Vec<u64>,
    /// Σ witness^k ≡ −1 (mod q), re-summed.
    pub verified: bool,
}

fn pow_mod(x: u64, k: u32, q: u64) -> u64 {
    let mut acc = 1u128 % q as u128;
    for _ in 0..k {
        acc = acc * x as u128 % q as u128;
    }
    acc as u64
}

/// Cyclic bitset over Z/q.
#[derive(Clone, PartialEq, Eq)]
struct Residues {
    q: usize,
    words: Vec<u64>,
}

impl Residues {
    fn empty(q: usize) -> Residues {
        Residues { q, words: vec![0; q.div_ceil(64)] }
    }

    fn insert(&mut self, r: usize) {
        self.words[r / 64] |= 1 << (r % 64);
    }

    fn contains(&self, r: usize) -> bool {
        self.words[r / 64] >> (r % 64) & 1 == 1
    }

    fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.q).filter(|&r| self.contains(r))
    }

    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Bits of `self` followed by bits of `self`, as 2q bits plus a spare word.
    fn doubled(&self) -> Vec<u64> {
        let mut out = vec![0u64; (2 * self.q).div_ceil(64) + 2];
        for half in 0..2 {
            let base = half * self.q;
            for (i, &w) in self.words.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                let pos = base + 64 * i;
                out[pos / 64] |= w << (pos % 64);
                if !pos.is_multiple_of(64) {
                    out[pos / 64 + 1] |= w >> (64 - pos % 64);
                }
            }
        }
        out
    }

    /// self |= (src + shift), where `ext` is `src.doubled()`.
    fn or_shifted(&mut self, ext: &[u64], shift: usize) {
        // Bit j of the shifted set is bit (j − shift) mod q of src, i.e. bit
        // j + q − shift of the doubled copy.
        let off = (self.q - shift % self.q) % self.q;
        let (w0, s) = (off / 64, off % 64);
        let last = self.words.len() - 1;
        for (i, out) in self.words.iter_mut().enumerate() {
            let lo = ext[w0 + i];
            let v = if s == 0 { lo } else { (lo >> s) | (ext[w0 + i + 1] << (64 - s)) };
            *out |= if i == last && !self.q.is_multiple_of(64) { v & ((1u64 << (self.q % 64)) - 1) } else { v };
        }
    }
}

/// Smallest m with q − 1 a sum of m k-th powers mod q, with a witness.
///
/// Layer t holds the residues that are sums of t powers (0 included, so the
/// layers grow). The witness is reconstructed from the top layer down,
/// each time taking the smallest base that stays in the layer below.
pub fn min_powers_for_neg1(k: u32, q: u64) -> Result<PowerRepresentation> {
    if k == 0 || q < 2 {
        return Err(NawError::InvalidInput("need k ≥ 1 and q ≥ 2".into()));
    }
    let qs = usize::try_from(q).map_err(|_| NawError::Overflow)?;
    let mut powers = Residues::empty(qs);
    for x in 0..q {
        powers.insert(pow_mod(x, k, q) as usize);
    }
    let target = qs - 1;
    let caps = Caps::from_env();
    let mut layers = vec![Residues::empty(qs)];
    layers[0].insert(0);
    let power_list: Vec<usize> = powers.members().collect();
    let powers_ext = powers.doubled();
    while !layers.last().unwrap().contains(target) {
        let cur = layers.last().unwrap();
        let cur_len = cur.len();
        // The sumset is symmetric; shift whichever side has fewer members.
        let work = cur_len.min(power_list.len()) * cur.words.len();
        caps.check(&format!("power-sum layer search mod {q}"), work, caps.waring_work)?;
        let mut next = Residues::empty(qs);
        if cur_len <= power_list.len() {
            for r in cur.members() {
                next.or_shifted(&powers_ext, r);
            }
        } else {
            let ext = cur.doubled();
            for &p in &power_list {
                next.or_shifted(&ext, p);
            }
        }
        if next == *cur {
            return Err(NawError::Certificate(format!("−1 is not a sum of {k}-th powers mod {q}")));
        }
        layers.push(next);
    }
    let m = layers.len() - 1;
    let mut witness = Vec::with_capacity(m);
    let mut rest = target;
    for t in (0..m).rev() {
        let x = (0..q)
            .find(|&x| layers[t].contains((rest + qs - pow_mod(x, k, q) as usize) % qs))
            .expect("layer t + 1 is the sumset of layer t with the powers");
        rest = (rest + qs - pow_mod(x, k, q) as usize) % qs;
        witness.push(x);
    }
    witness.sort_unstable_by(|a, b| b.cmp(a));
    let sum = witness.iter().fold(0u128, |acc, &x| (acc + pow_mod(x, k, q) as u128) % q as u128);
    Ok(PowerRepresentation { k, q, m, witness, verified: sum == q as u128 - 1 })
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundVerdict {
    pub k: u32,
    pub q: u64,
    pub m: usize,
    pub bound: usize,
    pub pass: bool,
}

/// Checks the minimal representation of −1 against the uniform cap 4k.
pub fn hl_bound_check(k: u32, q: u64) -> Result<BoundVerdict> {
    let rep = min_powers_for_neg1(k, q)?;
    let bound = super::power_cap(k);
    Ok(BoundVerdict { k, q, m: rep.m, bound, pass: rep.verified && rep.m <= bound })
}
