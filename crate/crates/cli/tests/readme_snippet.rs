use pco_cli::parse_formula;
use pco_core::{CausalMultiteam, FunctionComponent, LawTable, Multiteam, Signature};

#[test]
fn readme_snippet_compiles_and_holds() {
    let sig = Signature::binary(&["X", "Y"]).unwrap();
    let y = sig.var("Y").unwrap();

    let mut laws = FunctionComponent::empty();
    laws.insert(y, LawTable::from_fn(&sig, y, |ctx| ctx[0]));

    let mut team = Multiteam::empty();
    team.add(sig.mk_assignment(&[("X", "0"), ("Y", "0")]).unwrap(), 3);
    team.add(sig.mk_assignment(&[("X", "1"), ("Y", "1")]).unwrap(), 1);

    let model = CausalMultiteam::new(sig.clone(), laws, team).unwrap();
    let phi = parse_formula("P(Y=0) >= 3/4", &sig).unwrap();
    assert!(model.eval_pco(&phi).unwrap());
}
