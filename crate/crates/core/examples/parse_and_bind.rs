//! Parsing, macro expansion against a vocabulary, and printing back.

use lpfd::{bind, parse, Vocabulary};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v = Vocabulary::new(["a", "b", "c"])?.with_predicate("P", 1)?;

    let sources = [
        "[={a}; <={b}; <{c}] P(a)",
        "dep[={a,b}; <={}; <{}] c",
        "(pa({a,b}) -> na({a,b}))",
        "(paY({c};{a}) & ~ca({a,b}))",
        "D(-{c}; c)",
    ];
    for src in sources {
        let ast = parse(src)?;
        let bound = bind(&ast, &v)?;
        println!("{src}");
        println!("  parsed:   {ast}");
        println!("  expanded: {}", bound.display(&v));
        println!("  free:     {:?}", v.group_names(bound.free()));
    }

    match parse("[={a}; <={b}] P(a)") {
        Ok(_) => unreachable!(),
        Err(e) => println!("error: {e}"),
    }
    Ok(())
}
