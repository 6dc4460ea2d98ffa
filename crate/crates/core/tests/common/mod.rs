//! Brute-force oracles shared by the integration tests. They only read the
//! multiplication table and never call the subgroup algorithms they check.
#![allow(dead_code)]

use hallbound::group::FiniteGroup;

/// Smallest subset containing `seeds` and closed under multiplication,
/// by repeated squaring of the whole set.
pub fn generated(g: &FiniteGroup, seeds: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; g.order()];
    inside[0] = true;
    for &s in seeds {
        inside[s] = true;
    }
    loop {
        let members: Vec<usize> = (0..g.order()).filter(|&x| inside[x]).collect();
        let mut grew = false;
        for &a in &members {
            for &b in &members {
                let p = g.mul(a, b);
                if !inside[p] {
                    inside[p] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            return inside;
        }
    }
}

/// Subgroup generated by every commutator `[a, b]` with `a in h`, `b in k`.
pub fn commutator(g: &FiniteGroup, h: &[bool], k: &[bool]) -> Vec<bool> {
    let mut seeds = Vec::new();
    for a in (0..g.order()).filter(|&a| h[a]) {
        for b in (0..g.order()).filter(|&b| k[b]) {
            let ab = g.mul(a, b);
            let ba = g.mul(b, a);
            seeds.push(g.mul(g.inv(ba), ab));
        }
    }
    seeds.sort_unstable();
    seeds.dedup();
    generated(g, &seeds)
}

/// Nilpotency class from the lower central series computed element by element.
pub fn class_oracle(g: &FiniteGroup) -> Option<usize> {
    let whole = vec![true; g.order()];
    let mut term = whole.clone();
    for i in 0.. {
        if term.iter().filter(|&&b| b).count() == 1 {
            return Some(i);
        }
        let next = commutator(g, &whole, &term);
        if next == term {
            return None;
        }
        term = next;
    }
    unreachable!()
}

/// Every normal subgroup as a bitmask, found by enumerating all subsets
/// that contain the identity and have a size dividing `|G|`.
pub fn normal_subgroups_by_subsets(g: &FiniteGroup) -> Vec<u32> {
    let n = g.order();
    assert!(n <= 32, "subset oracle is for small groups");
    // Left multiplication and conjugation as bitmask maps.
    let image = |mask: u32, f: &dyn Fn(usize) -> usize| -> u32 {
        let mut out = 0u32;
        let mut m = mask;
        while m != 0 {
            let x = m.trailing_zeros() as usize;
            out |= 1 << f(x);
            m &= m - 1;
        }
        out
    };
    let rest = n - 1;
    let mut found = Vec::new();
    for size in (1..=n).filter(|k| n.is_multiple_of(*k)) {
        let pick = size - 1;
        // Gosper's hack over `pick`-subsets of the non-identity elements 1..n.
        let mut combo: u64 = if pick == 0 { 0 } else { (1u64 << pick) - 1 };
        loop {
            let mask = ((combo << 1) as u32) | 1;
            let closed = {
                let mut m = mask;
                let mut ok = true;
                while m != 0 && ok {
                    let a = m.trailing_zeros() as usize;
                    ok = image(mask, &|x| g.mul(a, x)) & !mask == 0;
                    m &= m - 1;
                }
                ok
            };
            if closed && (0..n).all(|c| image(mask, &|x| g.conj(x, c)) == mask) {
                found.push(mask);
            }
            if pick == 0 || pick == rest {
                break;
            }
            let low = combo & combo.wrapping_neg();
            let ripple = combo + low;
            combo = (((ripple ^ combo) >> 2) / low) | ripple;
            if combo >> rest != 0 {
                break;
            }
        }
    }
    found.sort_unstable();
    found
}
