//! Built-in spaces.

use crate::cone::{build_space, OrderedSpace};
use crate::error::{Error, Result};
use crate::exact::VectorQ;

/// `v1..v4` of the four-ray cone in `Q^3`.
pub fn four_ray_generators() -> Vec<VectorQ> {
    vec![
        VectorQ::from_ints(&[1, 0, 1]),
        VectorQ::from_ints(&[0, 1, 1]),
        VectorQ::from_ints(&[-1, 0, 1]),
        VectorQ::from_ints(&[0, -1, 1]),
    ]
}

/// `f1..f4`; `f_j` vanishes on `v_j` and `v_(j+1)`.
pub fn four_ray_facets() -> Vec<VectorQ> {
    vec![
        VectorQ::from_ints(&[-1, -1, 1]),
        VectorQ::from_ints(&[1, -1, 1]),
        VectorQ::from_ints(&[1, 1, 1]),
        VectorQ::from_ints(&[-1, 1, 1]),
    ]
}

pub fn four_ray() -> OrderedSpace {
    build_space(3, Some(&four_ray_generators()), Some(&four_ray_facets()), "four-ray")
        .expect("four-ray fixture is consistent")
}

/// `Q^n` with the standard cone.
pub fn simplex(n: usize) -> OrderedSpace {
    let unit: Vec<VectorQ> = (0..n).map(|i| VectorQ::unit(n, i)).collect();
    build_space(n, Some(&unit), Some(&unit), &format!("simplex:{n}"))
        .expect("standard cone is consistent")
}

/// Cone over the lattice pentagon (0,0), (2,0), (3,2), (1,3), (-1,2).
pub fn pentagon() -> OrderedSpace {
    let gens: Vec<VectorQ> = [[0, 0], [2, 0], [3, 2], [1, 3], [-1, 2]]
        .iter()
        .map(|[x, y]| VectorQ::from_ints(&[*x, *y, 1]))
        .collect();
    build_space(3, Some(&gens), None, "pentagon").expect("pentagon cone is pointed and generating")
}

/// Resolves `four-ray`, `pentagon` or `simplex:<n>`.
pub fn builtin(name: &str) -> Result<OrderedSpace> {
    match name {
        "four-ray" => Ok(four_ray()),
        "pentagon" => Ok(pentagon()),
        _ => match name.strip_prefix("simplex:").map(str::parse::<usize>) {
            Some(Ok(n)) if (1..=12).contains(&n) => Ok(simplex(n)),
            _ => Err(Error::UnknownBuiltin(name.to_string())),
        },
    }
}
