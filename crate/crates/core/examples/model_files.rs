//! Building a model in code, writing it as TOML and reading it back.

use lpfd::model::{Frame, PdModel, Preorder};
use lpfd::Vocabulary;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v = Vocabulary::new(["row", "col"])?;
    let actions = vec![vec!["h", "t"], vec!["h", "t"]];
    let frame = Frame::new(v, &actions, None)?;

    // Matching pennies over hh, ht, th, tt: row wants a match, col does not.
    let row = Preorder::from_key(&[1, 0, 0, 1]);
    let col = Preorder::from_key(&[0, 1, 1, 0]);
    let m = PdModel::new(frame, vec![row, col])?;

    let text = m.to_toml();
    println!("{text}");
    let back = PdModel::from_toml(&text)?;
    assert_eq!(back.to_toml(), text);

    let nash = lpfd::analysis::nash(&back, back.vocab().all_players())?;
    println!("pure equilibria: {:?}", nash.solution_labels(&back));
    Ok(())
}
