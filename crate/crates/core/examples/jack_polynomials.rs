//! Integral-form Jack functions in the power-sum basis, their orthogonality,
//! and the weights entering the Bessel expansion.

use freebessel::jack::{jack_inner, jack_weight, JackParam, JackTable};
use num_traits::Signed;

use freebessel::symcore::{partitions_of, rat, Partition, Rat};

fn main() -> freebessel::Result<()> {
    let param = JackParam::new(rat(2, 1))?;
    let table = JackTable::build(param.clone(), 4);
    for lam in partitions_of(4) {
        let j = table.get(&lam).expect("in table");
        println!("J{lam} = {}", show("p", j.terms()));
    }

    let a = table.get(&Partition::new(vec![3, 1])?).expect("in table");
    let b = table.get(&Partition::new(vec![2, 2])?).expect("in table");
    println!("<J(3,1), J(2,2)> = {}", jack_inner(a, b, &param)?);
    println!("<J(3,1), J(3,1)> = {}", jack_inner(a, a, &param)?);

    let theta = rat(1, 2);
    let param = JackParam::from_theta(&theta)?;
    for lam in partitions_of(3) {
        println!("weight{lam} at N=4, theta=1/2: {}", jack_weight(&lam, &param, 4, &theta));
    }
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
