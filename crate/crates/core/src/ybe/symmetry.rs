use super::bracket::ccybe_bracket;
use super::profile::DiagProfile;
use crate::conformal::{reduce_mod_total, ConfAlgebra};
use crate::exactpoly::{MPoly, Sym};

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn signature(p: &[usize; 3]) -> i64 {
    let inversions = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S3Mismatch {
    pub triple: [u8; 3],
    pub perm: [usize; 3],
}

/// For every triple `t` and permutation `σ`, compares the reduced projection
/// at `t` with the projection at `σ(t)` after moving the slot variables back,
/// up to the sign of `σ`. The comparison is exact; a profile already
/// parametrised by the invariance relations makes it a comparison modulo
/// those relations.
pub fn s3_symmetry_check(profile: &DiagProfile) -> Vec<S3Mismatch> {
    let alg = ConfAlgebra::cur_sl2();
    let t = ccybe_bracket(&alg, &profile.lift());
    let base = reduce_mod_total(&t, None);
    let slots: Vec<MPoly> = (1..=3).map(|i| MPoly::var(Sym::slot(i))).collect();
    let d1_elim = -&(&slots[1] + &slots[2]);
    let mut out = Vec::new();
    for a in 0..3u8 {
        for b in 0..3u8 {
            for c in 0..3u8 {
                let tup = [a, b, c];
                let lhs = base.project(&tup);
                for perm in PERMS {
                    let moved: Vec<u8> = perm.iter().map(|&i| tup[i]).collect();
                    let subs: Vec<(Sym, MPoly)> = (0..3).map(|i| (Sym::slot(i + 1), slots[perm[i]].clone())).collect();
                    let rhs = t.project(&moved).subst_many(&subs).subst(Sym::slot(1), &d1_elim);
                    let signed = rhs.scale(&crate::exactpoly::int(signature(&perm)));
                    if signed != lhs {
                        out.push(S3Mismatch { triple: tup, perm });
                    }
                }
            }
        }
    }
    out
}
