//! Explicit ket expansion of the four bispinor components.
//!
//! For each partial wave `l` (with `n = l+1`) the packet contributes
//!
//! ```text
//! c1:  i a g₊ |l,l>   + i b √(2l)/(2l+1) g₊ |l,l-1>   - i b √(2l)/(2l+1) g₋ |l,l-1>
//! c2:  i b/(2l+1) g₊ |l,l>   + i b 2l/(2l+1) g₋ |l,l>
//! c3:  a/√(2l+3) f₊ |l+1,l>  + b √(2/((2l+1)(2l+3))) f₊ |l+1,l-1>  - b √(2l/(2l+1)) f₋ |l-1,l-1>
//! c4: -a √((2l+2)/(2l+3)) f₊ |l+1,l+1>  - b/√(2l+3) f₊ |l+1,l>
//! ```
//!
//! each multiplied by `w_l` and the phase `e^{-iE t}` of its source state.

use num_complex::Complex64;

use crate::dirac_coulomb::{Branch, RadialPart};

/// One term `coeff · R(r) · Y_{l_orb, m}` of a bispinor component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ket {
    /// 0..4 for c1..c4.
    pub component: usize,
    pub l_orb: u32,
    pub m: i32,
    /// Partial wave (`l = n-1`) the radial function and energy belong to.
    pub source_l: u32,
    pub branch: Branch,
    pub part: RadialPart,
    /// Angular coefficient times `a` or `b` and the `i` of the large
    /// components; the weight `w_l` is not included.
    pub coeff: Complex64,
}

/// Kets of partial wave `l >= 1` for spin amplitudes `(a, b)`.
pub fn partial_wave_kets(l: u32, a: f64, b: f64) -> Vec<Ket> {
    debug_assert!(l >= 1);
    let lf = l as f64;
    let li = l as i32;
    let two_l = 2.0 * lf;
    let i = Complex64::i();
    let re = |x: f64| Complex64::new(x, 0.0);
    let mix = two_l.sqrt() / (two_l + 1.0);

    let ket = |component, l_orb, m, branch, part, coeff| Ket { component, l_orb, m, source_l: l, branch, part, coeff };
    use Branch::{JMinus, JPlus};
    use RadialPart::{Large, Small};
    let mut kets = vec![
        ket(0, l, li, JPlus, Large, i * a),
        ket(0, l, li - 1, JPlus, Large, i * (b * mix)),
        ket(0, l, li - 1, JMinus, Large, i * (-b * mix)),
        ket(1, l, li, JPlus, Large, i * (b / (two_l + 1.0))),
        ket(1, l, li, JMinus, Large, i * (b * two_l / (two_l + 1.0))),
        ket(2, l + 1, li, JPlus, Small, re(a / (two_l + 3.0).sqrt())),
        ket(2, l + 1, li - 1, JPlus, Small, re(b * (2.0 / ((two_l + 1.0) * (two_l + 3.0))).sqrt())),
        ket(2, l - 1, li - 1, JMinus, Small, re(-b * (two_l / (two_l + 1.0)).sqrt())),
        ket(3, l + 1, li + 1, JPlus, Small, re(-a * ((two_l + 2.0) / (two_l + 3.0)).sqrt())),
        ket(3, l + 1, li, JPlus, Small, re(-b / (two_l + 3.0).sqrt())),
    ];
    kets.retain(|k| k.coeff != Complex64::new(0.0, 0.0));
    kets
}
