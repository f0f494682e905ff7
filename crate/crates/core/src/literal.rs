//! Textual literals accepted on the command line.
//!
//! * prime powers: a bare integer (`64`) or `p^n` (`2^6`);
//! * groups: comma-separated prime-power cyclic orders with no spaces
//!   (`2,2,9` is `Z/2 × Z/2 × Z/9`); the empty string and `1` mean the
//!   trivial group;
//! * order lists: comma-separated positive integers (`2,4,8`).

use crate::abgroups::FiniteAbelianGroup;
use crate::arith::PrimePower;
use crate::error::{bail, Result};

fn parse_decimal(s: &str) -> Result<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        bail!(Input, "expected an ASCII decimal integer, got {s:?}");
    }
    s.parse::<u64>()
        .map_err(|_| crate::Error::Input(format!("integer {s:?} out of range")))
}

pub fn parse_prime_power(s: &str) -> Result<PrimePower> {
    match s.split_once('^') {
        Some((p, n)) => {
            let p = parse_decimal(p)?;
            let n = parse_decimal(n)?;
            let n = u32::try_from(n)
                .map_err(|_| crate::Error::Input(format!("exponent {n} out of range")))?;
            PrimePower::new(p, n)
        }
        None => PrimePower::from_q(parse_decimal(s)?),
    }
}

pub fn parse_group(s: &str) -> Result<FiniteAbelianGroup> {
    if s.is_empty() || s == "1" {
        return Ok(FiniteAbelianGroup::trivial());
    }
    let factors = s.split(',').map(parse_decimal).collect::<Result<Vec<_>>>()?;
    FiniteAbelianGroup::from_factors(factors)
}

pub fn parse_orders(s: &str) -> Result<Vec<u64>> {
    let orders = s.split(',').map(parse_decimal).collect::<Result<Vec<_>>>()?;
    if orders.contains(&0) {
        bail!(Input, "orders must be positive");
    }
    Ok(orders)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_power_forms() {
        assert_eq!(parse_prime_power("64").unwrap(), PrimePower::new(2, 6).unwrap());
        assert_eq!(parse_prime_power("2^6").unwrap(), PrimePower::new(2, 6).unwrap());
        assert!(parse_prime_power("12").is_err());
        assert!(parse_prime_power("4^2").is_err());
        assert!(parse_prime_power(" 7").is_err());
        assert!(parse_prime_power("2^").is_err());
        assert!(parse_prime_power("2^99").is_err());
    }

    #[test]
    fn group_literals() {
        let g = parse_group("2,2,9").unwrap();
        assert_eq!(g.factors(), &[2, 2, 9]);
        assert_eq!(parse_group("9,2,2").unwrap(), g);
        assert!(parse_group("").unwrap().is_trivial());
        assert!(parse_group("1").unwrap().is_trivial());
        assert!(parse_group("2, 2").is_err());
        assert!(parse_group("6").is_err());
        assert!(parse_group("2,,2").is_err());
    }

    #[test]
    fn order_lists() {
        assert_eq!(parse_orders("2,4,8").unwrap(), vec![2, 4, 8]);
        assert!(parse_orders("2,0").is_err());
        assert!(parse_orders("").is_err());
    }

    proptest! {
        #[test]
        fn group_literal_round_trip(f in proptest::collection::vec(prop_oneof![Just(2u64), Just(4), Just(8), Just(3), Just(9), Just(5), Just(49)], 0..6)) {
            let g = FiniteAbelianGroup::from_factors(f).unwrap();
            prop_assert_eq!(parse_group(&g.to_string()).unwrap(), g);
        }

        #[test]
        fn parsers_never_panic(s in "\\PC{0,12}") {
            let _ = parse_group(&s);
            let _ = parse_prime_power(&s);
            let _ = parse_orders(&s);
        }
    }
}
