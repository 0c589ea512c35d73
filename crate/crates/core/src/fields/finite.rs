use super::galois::{FiniteFieldSpec, GaloisField};
use super::FieldError;
use crate::construct::{group_extension_named, prime};
use crate::hyperfield::{Elem, ElemSet, FiniteHyperfield, HyperfieldTables};

/// A field viewed as a hyperfield with singleton sums. Labels are the
/// integer element codes.
pub fn field_hyperfield(f: &GaloisField) -> FiniteHyperfield {
    let n = f.order() as usize;
    let e = |c: u32| Elem::new(c as usize);
    let code = |x: Elem| x.index() as u32;
    let tables = HyperfieldTables::from_fns(
        (0..n).map(|i| i.to_string()).collect(),
        e(0),
        e(1),
        |a| e(f.neg(code(a))),
        |a, b| e(f.mul(code(a), code(b))),
        |a, b| ElemSet::singleton(n, e(f.add(code(a), code(b)))),
    )
    .expect("field tables are total");
    FiniteHyperfield::new(tables).expect("a field is a hyperfield")
}

/// Square classes of `F_q`: index 0 is the zero class, 1 the squares and 2
/// (odd `q` only) the nonsquares. Also returns the class of `-1`.
fn square_classes(f: &GaloisField) -> (Vec<usize>, usize) {
    let squares: Vec<bool> = f.elements().map(|a| a != 0 && f.is_square(a)).collect();
    let class: Vec<usize> = f
        .elements()
        .map(|a| if a == 0 { 0 } else if squares[a as usize] { 1 } else { 2 })
        .collect();
    let minus_one = class[f.neg(1) as usize];
    (class, minus_one)
}

/// `K/ₘK*²` computed directly: class `c` lies in `a + b` iff some
/// `a·x² + b·y²` with `x, y ≠ 0` lies in `c`.
pub fn square_class_hyperfield(f: &GaloisField) -> FiniteHyperfield {
    let (class, minus_one) = square_classes(f);
    let odd = f.order() % 2 == 1;
    let n = if odd { 3 } else { 2 };
    let mut labels = vec!["0".to_string(), "1".to_string()];
    if odd {
        labels.push(if minus_one == 2 { "-1" } else { "s" }.to_string());
    }
    let rep: Vec<u32> = (0..n)
        .map(|c| f.elements().find(|&a| class[a as usize] == c).expect("class is inhabited"))
        .collect();
    let nonzero_squares: Vec<u32> = f.elements().filter(|&a| a != 0 && f.is_square(a)).collect();
    let tables = HyperfieldTables::from_fns(
        labels,
        Elem::new(0),
        Elem::new(1),
        |a| Elem::new(class[f.neg(rep[a.index()]) as usize]),
        |a, b| Elem::new(class[f.mul(rep[a.index()], rep[b.index()]) as usize]),
        |a, b| {
            let (ra, rb) = (rep[a.index()], rep[b.index()]);
            let mut s = ElemSet::empty(n);
            match (a.index(), b.index()) {
                (0, _) | (_, 0) => s.insert(Elem::new(class[f.add(ra, rb) as usize])),
                _ => {
                    for &x in &nonzero_squares {
                        for &y in &nonzero_squares {
                            let v = f.add(f.mul(ra, x), f.mul(rb, y));
                            s.insert(Elem::new(class[v as usize]));
                        }
                    }
                }
            }
            s
        },
    )
    .expect("square-class tables are total");
    FiniteHyperfield::new(tables).expect("square classes form a hyperfield")
}

/// The quadratic hyperfield of `F_q`: the prime of its square classes.
pub fn q_finite_field(spec: FiniteFieldSpec) -> FiniteHyperfield {
    prime(&square_class_hyperfield(&GaloisField::new(spec)))
}

/// The quadratic hyperfield of a local field with residue field `F_q`,
/// `q` odd, with a uniformizer labelled `t`.
pub fn q_local(residue: FiniteFieldSpec) -> Result<FiniteHyperfield, FieldError> {
    q_local_named(residue, "t")
}

pub fn q_local_named(residue: FiniteFieldSpec, uniformizer: &str) -> Result<FiniteHyperfield, FieldError> {
    if residue.characteristic() == 2 {
        return Err(FieldError::DyadicResidue);
    }
    let (h, _) = group_extension_named(&q_finite_field(residue), &[uniformizer])?;
    Ok(h)
}
