//! Packed truth-table words. Index i of a table holds the value at the
//! assignment whose integer encoding is i; bit p of i is variable p+1.

/// Periodic within-word masks of indices having bit p set, for p < 6.
const PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

pub(crate) fn words_for(n_bits: usize) -> usize {
    1 + (n_bits.max(1) - 1) / 64
}

/// Mask selecting the valid bits of the last word of a table of `n_bits` bits.
pub(crate) fn tail_mask(n_bits: usize) -> u64 {
    if n_bits % 64 == 0 {
        !0
    } else {
        (1u64 << (n_bits % 64)) - 1
    }
}

pub(crate) fn clear_tail(blocks: &mut [u64], n_bits: usize) {
    if let Some(last) = blocks.last_mut() {
        *last &= tail_mask(n_bits);
    }
}

/// Word `word_idx` of the mask of all indices having bit position `pos` set.
pub(crate) fn var_word(pos: usize, word_idx: usize) -> u64 {
    if pos < 6 {
        PATTERNS[pos]
    } else if (word_idx >> (pos - 6)) & 1 == 1 {
        !0
    } else {
        0
    }
}

pub(crate) fn get_bit(blocks: &[u64], idx: usize) -> bool {
    blocks[idx / 64] >> (idx % 64) & 1 == 1
}

pub(crate) fn set_bit(blocks: &mut [u64], idx: usize) {
    blocks[idx / 64] |= 1 << (idx % 64);
}

/// Table t' with t'[i] = t[i ^ (1 << pos)].
pub(crate) fn xor_shuffle(blocks: &[u64], pos: usize) -> Vec<u64> {
    if pos < 6 {
        let pat = PATTERNS[pos];
        let sh = 1 << pos;
        blocks
            .iter()
            .map(|&w| ((w & pat) >> sh) | ((w & !pat) << sh))
            .collect()
    } else {
        let stride = 1 << (pos - 6);
        (0..blocks.len()).map(|b| blocks[b ^ stride]).collect()
    }
}

/// OR-projects away the top variable (bit position vars-1) of a 2^vars table,
/// yielding the 2^(vars-1) table of the existential image.
pub(crate) fn exists_top(blocks: &[u64], vars: usize) -> Vec<u64> {
    debug_assert!(vars >= 1);
    if vars <= 6 {
        let half = 1usize << (vars - 1);
        let w = blocks[0];
        vec![(w | (w >> half)) & tail_mask(half)]
    } else {
        let half_words = blocks.len() / 2;
        (0..half_words)
            .map(|i| blocks[i] | blocks[i + half_words])
            .collect()
    }
}

pub(crate) fn count_ones(blocks: &[u64]) -> u64 {
    blocks.iter().map(|w| w.count_ones() as u64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn var_word_matches_get_bit() {
        for pos in 0..10 {
            for idx in 0..1024usize {
                let expect = idx >> pos & 1 == 1;
                let got = var_word(pos, idx / 64) >> (idx % 64) & 1 == 1;
                assert_eq!(expect, got, "pos={pos} idx={idx}");
            }
        }
    }

    #[test]
    fn xor_shuffle_is_involution_and_correct() {
        let n = 9;
        let mut blocks = vec![0u64; words_for(1 << n)];
        for idx in 0..(1usize << n) {
            if idx.count_ones() % 3 == 0 {
                set_bit(&mut blocks, idx);
            }
        }
        for pos in 0..n {
            let sh = xor_shuffle(&blocks, pos);
            for idx in 0..(1usize << n) {
                assert_eq!(get_bit(&sh, idx), get_bit(&blocks, idx ^ (1 << pos)));
            }
            assert_eq!(xor_shuffle(&sh, pos), blocks);
        }
    }

    #[test]
    fn exists_top_small_and_large() {
        for vars in 1..=8usize {
            let bits = 1usize << vars;
            let mut blocks = vec![0u64; words_for(bits)];
            for idx in (0..bits).step_by(3) {
                set_bit(&mut blocks, idx);
            }
            let proj = exists_top(&blocks, vars);
            let half = bits / 2;
            assert_eq!(proj.len(), words_for(half));
            for idx in 0..half {
                let expect = get_bit(&blocks, idx) || get_bit(&blocks, idx + half);
                assert_eq!(get_bit(&proj, idx), expect);
            }
        }
    }
}
