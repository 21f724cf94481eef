//! Power sums, monomials and elementary functions, and the exp/log maps
//! between symmetric series.

use num_traits::Signed;

use freebessel::symcore::{basis_convert, partitions_of, rat, series_exp, series_log, Basis, Partition, Rat, SymSeries};

fn main() -> freebessel::Result<()> {
    for lam in partitions_of(3) {
        let p = SymSeries::from_terms(Basis::Power, 3, [(lam.clone(), rat(1, 1))]);
        let m = basis_convert(&p, Basis::Monomial, None)?;
        println!("p{lam} = {}", show("m", m.terms()));
    }

    // exp(p_1) truncated at degree 4, and back
    let x = SymSeries::from_terms(Basis::Power, 4, [(Partition::single(1), rat(1, 1))]);
    let e = series_exp(&x)?;
    for (lam, c) in e.terms() {
        println!("exp(p1): p{lam} -> {c}");
    }
    assert_eq!(series_log(&e)?, x);
    Ok(())
}

fn show<'a>(prefix: &str, terms: impl Iterator<Item = (&'a Partition, &'a Rat)>) -> String {
    let mut out = String::new();
    for (lam, c) in terms {
        let sign = if c < &Rat::from_integer(0.into()) { "-" } else { "+" };
        let mag = c.abs();
        if out.is_empty() {
            out.push_str(if sign == "-" { "-" } else { "" });
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if mag.is_integer() && mag.numer() == &1.into() {
            out.push_str(&format!("{prefix}{lam}"));
        } else {
            out.push_str(&format!("{mag}*{prefix}{lam}"));
        }
    }
    out
}
