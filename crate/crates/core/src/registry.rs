//! Named ambient algebras: `so(p,q)`, `su(p,q)`, `sp(p,q)`, `sl(n)` (also
//! `sln`), `f4`, `g2`, and powers such as `sl2^3`.

use alloc::format;
use alloc::string::String;

use crate::algebra::LieAlgebra;
use crate::catalog::{sl2_cube_parabolic, sl_parabolic};
use crate::error::{Error, Result};
use crate::jordan_f4::{build_f4, build_g2};
use crate::real_forms::{build_classical, build_sl, minimal_parabolic, power, Family, Parabolic};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    Classical(Family, usize, usize),
    Sl(usize),
    F4,
    G2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Named {
    pub base: Base,
    pub copies: usize,
}

fn bad(name: &str) -> Error {
    Error::InvalidInput(format!("unknown algebra name {name:?}"))
}

fn number(s: &str, name: &str) -> Result<usize> {
    s.parse().map_err(|_| bad(name))
}

fn parse_base(s: &str, name: &str) -> Result<Base> {
    match s {
        "f4" => return Ok(Base::F4),
        "g2" => return Ok(Base::G2),
        _ => {}
    }
    let (head, args) = match s.find('(') {
        Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
        Some(_) => return Err(bad(name)),
        None => (s, None),
    };
    if head == "sl" {
        return Ok(Base::Sl(number(args.ok_or_else(|| bad(name))?, name)?));
    }
    if let (Some(n), None) = (head.strip_prefix("sl"), args) {
        return Ok(Base::Sl(number(n, name)?));
    }
    let family = match head {
        "so" => Family::So,
        "su" => Family::Su,
        "sp" => Family::Sp,
        _ => return Err(bad(name)),
    };
    let (p, q) = args.and_then(|a| a.split_once(',')).ok_or_else(|| bad(name))?;
    Ok(Base::Classical(family, number(p, name)?, number(q, name)?))
}

pub fn parse(name: &str) -> Result<Named> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let (base, copies) = match compact.rsplit_once('^') {
        Some((b, c)) => (b, number(c, name)?),
        None => (compact.as_str(), 1),
    };
    if copies == 0 {
        return Err(bad(name));
    }
    Ok(Named { base: parse_base(base, name)?, copies })
}

pub fn build_named(name: &str) -> Result<LieAlgebra> {
    let named = parse(name)?;
    let base = match named.base {
        Base::Classical(f, p, q) => build_classical(f, p, q)?,
        Base::Sl(n) => build_sl(n)?,
        Base::F4 => build_f4()?,
        Base::G2 => build_g2()?,
    };
    power(&base, named.copies)
}

/// The parabolic the catalog uses for `name`: upper triangular for `sl(n)`
/// and `sl(2)^3`, otherwise the one `minimal_parabolic` picks.
pub fn parabolic_for(name: &str, g: &LieAlgebra) -> Result<Parabolic> {
    match parse(name)? {
        Named { base: Base::Sl(n), copies: 1 } => sl_parabolic(g, n),
        Named { base: Base::Sl(2), copies: 3 } => sl2_cube_parabolic(g),
        _ => minimal_parabolic(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_registry_strings() {
        assert_eq!(parse("so(1,4)").unwrap().base, Base::Classical(Family::So, 1, 4));
        assert_eq!(parse("sp(1, 3)").unwrap().base, Base::Classical(Family::Sp, 1, 3));
        assert_eq!(parse("sl2^3").unwrap(), Named { base: Base::Sl(2), copies: 3 });
        assert_eq!(parse("sl(2)^3").unwrap(), Named { base: Base::Sl(2), copies: 3 });
        assert_eq!(parse("f4").unwrap().base, Base::F4);
        for bad in ["so(1)", "e8", "sl(x)", "su(1,2", "sl2^0", ""] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn builds_named_algebras() {
        assert_eq!(build_named("su(1,2)").unwrap().dim(), 8);
        assert_eq!(build_named("sl2^3").unwrap().dim(), 9);
        let g = build_named("sl(3)").unwrap();
        assert_eq!(parabolic_for("sl(3)", &g).unwrap().p.dim(), 5);
    }
}
