//! The class group `Cl_*(A, E)` attached to the distinguished real place,
//! and the square-class subgroups `C_*(E) ⊆ C̃(E)` of `A^×/(A^×)^2`.
//!
//! Every class with even valuation at all finite primes is a product of
//! `-1`, the fundamental units and one virtual unit per basis element of
//! `Cl[2]` (a generator of `q^2` with `q` a prime of odd norm in that
//! class). Square classes are handled as F2 coordinate vectors over this
//! basis; quadratic residue characters at degree-one primes recover the
//! coordinates of an arbitrary element.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::class_units::{ClassUnits, IdealClassGroup};
use crate::cubic_field::{CubicField, FieldElement, OrderCoords, PrimeIdeal};
use crate::error::{Error, Result};
use crate::exact_arith::modp::{Fp, Subspace};
use crate::exact_arith::{factor_integer, is_rational_square, kronecker_symbol, primes_up_to};

/// Spare character columns beyond the dimension being separated.
const SPARE_CHARACTERS: usize = 24;
/// Virtual units are looked for among primes below this bound.
const VIRTUAL_UNIT_SEARCH: u64 = 100_000;
/// Brute force over `C̃` is refused beyond this dimension.
const MAX_ENUMERATED_DIM: usize = 20;

/// The real places of `A` above the real place of Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealPlaces {
    /// `A ⊗ R = R × C`: the only real place plays the distinguished role.
    One,
    /// `A ⊗ R = R^3`, places indexed by ascending root of the field's cubic.
    Three { distinguished: usize },
}

impl RealPlaces {
    /// For `y^2 = F(x)` where `F` defines `k`: the smallest root.
    pub fn of_field(k: &CubicField) -> Self {
        Self::for_twist(k, &BigInt::one())
    }

    /// For the twist `y^2 = d^3 F(x/d)`, viewed in the field of `F` through
    /// `T ↦ dθ`. A negative `d` reverses the order of the roots.
    pub fn for_twist(k: &CubicField, d: &BigInt) -> Self {
        match k.r1() {
            3 => RealPlaces::Three {
                distinguished: if d.is_negative() { 2 } else { 0 },
            },
            _ => RealPlaces::One,
        }
    }

    pub fn distinguished(&self) -> usize {
        match self {
            RealPlaces::One => 0,
            RealPlaces::Three { distinguished } => *distinguished,
        }
    }

    /// Sign columns and bit map for `signed_class_group`: with three real
    /// places, `(α)` is trivial exactly when the two non-distinguished
    /// signs of some generator agree.
    pub fn star_columns(&self) -> usize {
        match self {
            RealPlaces::One => 0,
            RealPlaces::Three { .. } => 1,
        }
    }

    pub fn star_bits(&self, bits: u8) -> u8 {
        match *self {
            RealPlaces::One => 0,
            RealPlaces::Three { distinguished } => {
                let mut others = (0..3).filter(|&i| i != distinguished);
                let (i, j) = (others.next().unwrap(), others.next().unwrap());
                (bits >> i ^ bits >> j) & 1
            }
        }
    }
}

/// A class in `A^×/(A^×)^2`, described by the data the subgroup
/// conditions look at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClass {
    /// Integral representative.
    pub representative: FieldElement,
    /// Signs at the real places, ascending root order.
    pub signature: Vec<i8>,
    pub even_valuations: bool,
    pub norm_is_square: bool,
    /// F2 coordinates on the even-valuation basis, when defined.
    pub coordinates: Option<Vec<u64>>,
}

#[derive(Clone, Debug)]
struct BasisElement {
    element: FieldElement,
    order: OrderCoords,
    sign_bits: u8,
}

/// Quadratic residue character at a degree-one prime.
#[derive(Clone, Debug)]
struct Character {
    prime: PrimeIdeal,
}

impl Character {
    /// Bit of `χ(x)` for integral `x`, or `None` when `x ∈ P`.
    fn bit(&self, x: &OrderCoords) -> Option<u64> {
        let r = self.prime.residue(x)?;
        match kronecker_symbol(&r, self.prime.p()) {
            0 => None,
            s => Some(u64::from(s < 0)),
        }
    }
}

/// `Cl_*(A, E)` together with `C_*(E)` and `C̃(E)` as subspaces of the
/// even-valuation square classes.
#[derive(Clone, Debug)]
pub struct StarClass<'a> {
    cu: &'a ClassUnits,
    places: RealPlaces,
    basis: Vec<BasisElement>,
    characters: Vec<Character>,
    /// Character bits of each basis element, one row per element.
    char_rows: Vec<Vec<u64>>,
    /// Every prime up to here has been tried as a character.
    last_char_prime: u64,
    group: IdealClassGroup,
    c_tilde: Subspace,
    c_star: Subspace,
}

fn f2() -> Fp {
    Fp::new(2)
}

impl<'a> StarClass<'a> {
    pub fn new(cu: &'a ClassUnits, places: RealPlaces) -> Result<Self> {
        let k = cu.field();
        let group = cu.signed_class_group(places.star_columns(), &|b| places.star_bits(b))?;
        let mut basis = vec![basis_element(k, FieldElement::integer(-1))?];
        for u in cu.unit_group().fundamental_units() {
            basis.push(basis_element(k, u.clone())?);
        }
        for g in virtual_units(cu)? {
            basis.push(basis_element(k, g)?);
        }
        let mut me = StarClass {
            cu,
            places,
            basis,
            characters: Vec::new(),
            char_rows: Vec::new(),
            last_char_prime: 2,
            group,
            c_tilde: Subspace::zero(f2(), 0),
            c_star: Subspace::zero(f2(), 0),
        };
        me.extend_characters(me.basis.len() + SPARE_CHARACTERS)?;
        me.c_tilde = me.compute_c_tilde()?;
        me.c_star = me.compute_c_star()?;
        Ok(me)
    }

    pub fn class_units(&self) -> &ClassUnits {
        self.cu
    }

    pub fn places(&self) -> RealPlaces {
        self.places
    }

    /// `Cl_*(A, E)`.
    pub fn star_class_group(&self) -> &IdealClassGroup {
        &self.group
    }

    /// Dimension of the group of square classes with even valuations:
    /// `r1 + r2 + dim Cl[2]`.
    pub fn even_classes_dim(&self) -> usize {
        self.basis.len()
    }

    /// The basis elements: `-1`, the fundamental units, then the virtual
    /// units.
    pub fn basis(&self) -> Vec<FieldElement> {
        self.basis.iter().map(|b| b.element.clone()).collect()
    }

    pub fn c_tilde(&self) -> &Subspace {
        &self.c_tilde
    }

    pub fn c_star(&self) -> &Subspace {
        &self.c_star
    }

    /// The product of the basis elements selected by `coords`.
    pub fn element(&self, coords: &[u64]) -> FieldElement {
        let k = self.cu.field();
        coords
            .iter()
            .zip(&self.basis)
            .filter(|(c, _)| **c == 1)
            .fold(FieldElement::one(), |acc, (_, b)| k.mul(&acc, &b.element))
    }

    /// `C̃(E)`: even valuations, positive at the distinguished place, and
    /// square norm. On even-valuation classes the norm is `±` a square, so
    /// both conditions are linear functionals on the coordinates.
    fn compute_c_tilde(&self) -> Result<Subspace> {
        let n = self.basis.len();
        let d = self.places.distinguished();
        let rows: Vec<Vec<u64>> = self
            .basis
            .iter()
            .map(|b| {
                vec![
                    u64::from(b.sign_bits >> d & 1),
                    u64::from(b.sign_bits.count_ones() % 2 == 1),
                ]
            })
            .collect();
        Ok(Subspace::spanned_by(f2(), n, f2().left_kernel(&rows)))
    }

    /// `C_*(E)`: the members of `C̃(E)` that are squares modulo `4O`.
    fn compute_c_star(&self) -> Result<Subspace> {
        let k = self.cu.field();
        let n = self.basis.len();
        let tb = self.c_tilde.basis().to_vec();
        if tb.len() > MAX_ENUMERATED_DIM {
            return Err(Error::Inconsistent(format!(
                "C̃ has dimension {} beyond enumeration",
                tb.len()
            )));
        }
        let four = BigInt::from(4);
        let squares = squares_mod_4(k);
        let mod4: Vec<OrderCoords> = self
            .basis
            .iter()
            .map(|b| b.order.clone().map(|c| c.mod_floor(&four)))
            .collect();
        let mut span = Subspace::zero(f2(), n);
        let mut members = 0usize;
        for mask in 0u64..1 << tb.len() {
            let mut v = vec![0u64; n];
            for (i, row) in tb.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x ^= y;
                    }
                }
            }
            let mut prod: OrderCoords = k.to_order(&FieldElement::one()).expect("1 is integral");
            for (c, m) in v.iter().zip(&mod4) {
                if *c == 1 {
                    prod = k.mul_int(&prod, m).map(|x| x.mod_floor(&four));
                }
            }
            if squares.contains(&prod) {
                members += 1;
                span.add(v);
            }
        }
        // the mod-4 square classes form a subgroup, so the members fill the span
        if members != 1 << span.rank() {
            return Err(Error::Inconsistent(format!(
                "{members} square classes mod 4 do not form a subgroup"
            )));
        }
        Ok(span)
    }

    /// Adds degree-one primes until there are at least `count` characters
    /// and they separate the basis.
    fn extend_characters(&mut self, count: usize) -> Result<()> {
        let k = self.cu.field();
        let mut bound = 64u64;
        loop {
            let from = self.last_char_prime;
            for p in primes_up_to(bound).into_iter().filter(|&p| p > from) {
                self.last_char_prime = p;
                let p = BigInt::from(p);
                for prime in k.factor_prime(&p)? {
                    if prime.f() != 1 || prime.e() != 1 {
                        continue;
                    }
                    let ch = Character { prime };
                    let Some(bits) = self
                        .basis
                        .iter()
                        .map(|b| ch.bit(&b.order))
                        .collect::<Option<Vec<_>>>()
                    else {
                        continue;
                    };
                    if self.char_rows.is_empty() {
                        self.char_rows = vec![Vec::new(); self.basis.len()];
                    }
                    for (row, b) in self.char_rows.iter_mut().zip(bits) {
                        row.push(b);
                    }
                    self.characters.push(ch);
                }
                if self.characters.len() >= count && self.separates(&self.all_columns()) {
                    return Ok(());
                }
            }
            if bound > 1 << 22 {
                return Err(Error::Inconsistent(
                    "quadratic characters do not separate the square classes".into(),
                ));
            }
            bound *= 4;
        }
    }

    fn all_columns(&self) -> Vec<usize> {
        (0..self.characters.len()).collect()
    }

    fn separates(&self, cols: &[usize]) -> bool {
        let rows = self
            .char_rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect());
        let n = self.basis.len();
        Subspace::spanned_by(f2(), cols.len(), rows).rank() == n
    }

    /// F2 coordinates of an element with even valuation everywhere. The
    /// characters are homomorphisms that separate the basis, so the
    /// solution is the class.
    pub fn coordinates(&mut self, alpha: &FieldElement) -> Result<Vec<u64>> {
        let k = self.cu.field();
        let x = integral_representative(k, alpha)?;
        loop {
            let bits: Vec<Option<u64>> = self.characters.iter().map(|c| c.bit(&x)).collect();
            let cols: Vec<usize> = (0..bits.len()).filter(|&i| bits[i].is_some()).collect();
            if self.separates(&cols) {
                let mut rows: Vec<Vec<u64>> = self
                    .char_rows
                    .iter()
                    .map(|r| cols.iter().map(|&c| r[c]).collect())
                    .collect();
                rows.push(cols.iter().map(|&c| bits[c].unwrap()).collect());
                let n = self.basis.len();
                let sol = f2()
                    .left_kernel(&rows)
                    .into_iter()
                    .find(|v| v[n] == 1)
                    .ok_or_else(|| {
                        Error::Inconsistent(format!(
                            "{alpha} is not in the span of the even classes"
                        ))
                    })?;
                return Ok(sol[..n].to_vec());
            }
            let more = self.characters.len() + SPARE_CHARACTERS;
            self.extend_characters(more)?;
        }
    }

    /// The data of the class of `alpha`. Valuations are read off the
    /// factorization of its norm.
    pub fn square_class(&mut self, alpha: &FieldElement) -> Result<SquareClass> {
        let k = self.cu.field();
        let x = integral_representative(k, alpha)?;
        let representative = k.from_order(&x);
        let norm = k.norm_int(&x);
        let even_valuations = even_valuations(k, &representative, &norm)?;
        let coordinates = if even_valuations {
            Some(self.coordinates(&representative)?)
        } else {
            None
        };
        Ok(SquareClass {
            signature: k.signature_of(&representative)?,
            norm_is_square: is_rational_square(&norm.into()),
            representative,
            even_valuations,
            coordinates,
        })
    }

    /// Membership in `C̃(E)`, checked from the defining conditions.
    pub fn in_c_tilde(&self, class: &SquareClass) -> bool {
        class.even_valuations
            && class.norm_is_square
            && class.signature[self.places.distinguished()] > 0
    }

    pub fn in_c_star(&self, class: &SquareClass) -> bool {
        class
            .coordinates
            .as_ref()
            .is_some_and(|c| self.c_star.contains(c))
    }

    /// `|ker(Cl_* → Cl)|`, the index of `P_*` in `P`.
    pub fn kernel_to_class_group(&self) -> BigInt {
        self.group.order() / self.cu.class_group().order()
    }
}

fn basis_element(k: &CubicField, element: FieldElement) -> Result<BasisElement> {
    let order = k
        .to_order(&element)
        .ok_or_else(|| Error::Inconsistent(format!("basis element {element} is not integral")))?;
    Ok(BasisElement {
        sign_bits: k.sign_bits(&element)?,
        element,
        order,
    })
}

/// `alpha · m^2` for the least `m` making it integral.
fn integral_representative(k: &CubicField, alpha: &FieldElement) -> Result<OrderCoords> {
    if alpha.is_zero() {
        return Err(Error::ZeroElement);
    }
    let c = k.basis_coords(alpha);
    let d = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    Ok(c.map(|q| (q * &d * &d).to_integer()))
}

fn even_valuations(k: &CubicField, alpha: &FieldElement, norm: &BigInt) -> Result<bool> {
    if norm.abs().is_one() {
        return Ok(true);
    }
    for (p, _) in factor_integer(norm)? {
        for prime in k.factor_prime(&p)? {
            if prime.valuation(k, alpha)? % 2 != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `{β^2 mod 4O}`; it only depends on `β mod 2O`.
pub fn squares_mod_4(k: &CubicField) -> Vec<OrderCoords> {
    let four = BigInt::from(4);
    let mut out: Vec<OrderCoords> = (0..8u8)
        .map(|m| {
            let b: OrderCoords = std::array::from_fn(|i| BigInt::from(m >> i & 1));
            k.mul_int(&b, &b).map(|x| x.mod_floor(&four))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Whether the integral element `x` is congruent to a square mod `4O`.
pub fn is_square_mod_4(k: &CubicField, x: &OrderCoords) -> bool {
    let four = BigInt::from(4);
    squares_mod_4(k).contains(&x.clone().map(|c| c.mod_floor(&four)))
}

/// One generator of `q^2` for each cyclic factor of even order in `Cl`,
/// with `q` a prime of odd norm in the class of order two.
fn virtual_units(cu: &ClassUnits) -> Result<Vec<FieldElement>> {
    let k = cu.field();
    let cl = cu.class_group();
    let divisors = cl.elementary_divisors().to_vec();
    let mut targets: Vec<(usize, Vec<BigInt>)> = divisors
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_even())
        .map(|(i, d)| {
            let mut t = vec![BigInt::zero(); divisors.len()];
            t[i] = d / 2;
            (i, t)
        })
        .collect();
    let mut found: Vec<(usize, FieldElement)> = Vec::new();
    for p in primes_up_to(VIRTUAL_UNIT_SEARCH).into_iter().skip(1) {
        if targets.is_empty() {
            break;
        }
        for prime in k.factor_prime(&BigInt::from(p))? {
            let c = cu.class_of(prime.ideal())?;
            if let Some(pos) = targets.iter().position(|(_, t)| *t == c) {
                let (i, _) = targets.remove(pos);
                let q2 = k.ideal_mul(prime.ideal(), prime.ideal());
                let g = cu.is_principal(&q2)?.ok_or_else(|| {
                    Error::Inconsistent("square of a 2-torsion class is not principal".into())
                })?;
                found.push((i, g));
            }
        }
    }
    if !targets.is_empty() {
        return Err(Error::Inconsistent(
            "no prime of odd norm found in a class of order two".into(),
        ));
    }
    found.sort_by_key(|(i, _)| *i);
    Ok(found.into_iter().map(|(_, g)| g).collect())
}

/// F2-rank of the signs of `-1` and the fundamental units.
pub fn unit_signature_rank(cu: &ClassUnits) -> usize {
    let r1 = cu.field().r1();
    let all = (1u8 << r1) - 1;
    let rows = std::iter::once(all)
        .chain(cu.unit_group().sign_bits().iter().copied())
        .map(|b| (0..r1).map(|i| u64::from(b >> i & 1)).collect());
    Subspace::spanned_by(f2(), r1, rows).rank()
}
