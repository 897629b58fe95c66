//! Shared fixtures for unit tests.

use crate::laws::{FunctionComponent, LawTable};
use crate::model::CausalMultiteam;
use crate::signature::Signature;
use crate::team::Multiteam;

/// Three-variable product model: Y = X + 1 and Z = X * Y, with rows
/// (0,1,0), (1,2,2) twice, and (2,3,6).
pub(crate) fn product_example() -> CausalMultiteam {
    let sig = Signature::new(vec![
        ("X", vec!["0", "1", "2"]),
        ("Y", vec!["1", "2", "3"]),
        ("Z", vec!["0", "1", "2", "3", "4", "6"]),
    ])
    .unwrap();
    let x = sig.var("X").unwrap();
    let y = sig.var("Y").unwrap();
    let z = sig.var("Z").unwrap();

    let num = |v, val| -> i64 { sig.value_name(v, val).parse().unwrap() };
    // W_Y = (X, Z) in signature order; output X + 1 (Z is a dummy argument).
    let y_law = LawTable::from_fn(&sig, y, |ctx| {
        sig.value(y, &(num(x, ctx[0]) + 1).to_string()).unwrap()
    });
    // W_Z = (X, Y); output X * Y.
    let z_law = LawTable::from_fn(&sig, z, |ctx| {
        sig.value(z, &(num(x, ctx[0]) * num(y, ctx[1])).to_string())
            .unwrap()
    });
    let laws = FunctionComponent::from_laws(vec![(y, y_law), (z, z_law)]);

    let mut team = Multiteam::empty();
    team.add(
        sig.mk_assignment(&[("X", "0"), ("Y", "1"), ("Z", "0")])
            .unwrap(),
        1,
    );
    team.add(
        sig.mk_assignment(&[("X", "1"), ("Y", "2"), ("Z", "2")])
            .unwrap(),
        2,
    );
    team.add(
        sig.mk_assignment(&[("X", "2"), ("Y", "3"), ("Z", "6")])
            .unwrap(),
        1,
    );

    CausalMultiteam::new(sig, laws, team).unwrap()
}
