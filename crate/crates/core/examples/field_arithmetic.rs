//! GF(9) arithmetic in the basis `{1, w}` with `w^2 = w + 1`.

use qutrit_mdc::field::{trace_hermitian, trace_hermitian_vec, F9Vector, F9};

fn main() {
    println!("powers of w:");
    for k in 0..8 {
        let x = F9::from_power(k).expect("k < 8");
        println!("  w^{k} = {x:?} (token {x})");
    }
    let w = F9::OMEGA;
    println!("conj(w) = w^3 = {:?}", w.conj());
    println!("<w, 1> = {}, <1, w> = {}", trace_hermitian(w, F9::ONE), trace_hermitian(F9::ONE, w));

    let u = F9Vector::new(vec![w, F9::ONE]);
    let v = F9Vector::new(vec![F9::ONE, w]);
    println!("<{u:?}, {v:?}> = {}", trace_hermitian_vec(&u, &v).expect("equal lengths"));

    println!("\ntrace-Hermitian table (rows x, columns y, tokens 0..8):");
    let all: Vec<F9> = F9::all().collect();
    for &x in &all {
        let row: Vec<String> = all.iter().map(|&y| trace_hermitian(x, y).to_string()).collect();
        println!("  {x:?}\t{}", row.join(" "));
    }
}
