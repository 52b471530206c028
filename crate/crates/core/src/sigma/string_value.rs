use std::collections::BTreeSet;
use std::fmt;

/// A finite set of naturals read as a bit string.
///
/// The length is one plus the largest element (zero for the empty set), so a
/// non-empty value always has its top bit set.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct StringValue {
    // invariant: empty, or last element is true
    bits: Vec<bool>,
}

impl StringValue {
    pub fn empty() -> Self {
        StringValue { bits: Vec::new() }
    }

    pub fn from_elements<I: IntoIterator<Item = u64>>(elems: I) -> Self {
        let set: BTreeSet<u64> = elems.into_iter().collect();
        let len = set.iter().next_back().map(|m| m + 1).unwrap_or(0) as usize;
        let mut bits = vec![false; len];
        for e in set {
            bits[e as usize] = true;
        }
        StringValue { bits }
    }

    /// A string of exact length `payload.len() + 1`: the payload bits followed
    /// by the forced top bit.
    pub fn with_sentinel(payload: &[bool]) -> Self {
        let mut bits = payload.to_vec();
        bits.push(true);
        StringValue { bits }
    }

    /// Builds from raw bits, trimming trailing zeros.
    pub fn from_bits(bits: &[bool]) -> Self {
        let end = bits.iter().rposition(|b| *b).map(|i| i + 1).unwrap_or(0);
        StringValue {
            bits: bits[..end].to_vec(),
        }
    }

    pub fn length(&self) -> u64 {
        self.bits.len() as u64
    }

    pub fn bit(&self, i: u64) -> bool {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.bits.get(i).copied())
            .unwrap_or(false)
    }

    /// Bits below the top bit (empty for length 0 and 1).
    pub fn payload(&self) -> &[bool] {
        match self.bits.len() {
            0 => &[],
            n => &self.bits[..n - 1],
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| i as u64)
    }

    pub fn insert(&mut self, e: u64) {
        let e = e as usize;
        if e >= self.bits.len() {
            self.bits.resize(e + 1, false);
        }
        self.bits[e] = true;
    }

    pub fn with_flipped(&self, i: u64) -> Self {
        let mut bits = self.bits.clone();
        let i = i as usize;
        if i >= bits.len() {
            bits.resize(i + 1, false);
        }
        bits[i] = !bits[i];
        StringValue::from_bits(&bits)
    }

    /// All strings of exact length `n`.
    pub fn all_of_length(n: u64) -> impl Iterator<Item = StringValue> {
        let free = n.saturating_sub(1) as u32;
        let count: u64 = if n == 0 { 1 } else { 1u64 << free };
        (0..count).map(move |m| {
            if n == 0 {
                return StringValue::empty();
            }
            let payload: Vec<bool> = (0..free).map(|i| (m >> i) & 1 == 1).collect();
            StringValue::with_sentinel(&payload)
        })
    }
}

impl fmt::Debug for StringValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}
