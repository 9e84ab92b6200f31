//! A multiplication table rewritten into a binary dictionary: the process
//! prints the table's triangle, and a deleted product stops it.

use maharaja::rewriter::{decode_rows, encode_table, run, triangle, verify_encoding, MulTable, ReaderMode};

fn main() -> maharaja::Result<()> {
    let t = MulTable::example();
    println!("{t}");
    for row in triangle(&t, 8)? {
        println!("{row:>12}");
    }

    let enc = encode_table(&t)?;
    println!("\n{} entries of width {}:", enc.dictionary.len(), enc.codec.width());
    print!("{}", enc.dictionary);

    let start = enc.codec.encode("SS")?;
    let res = run(&enc.dictionary, &start, 40, ReaderMode::ScanForward)?;
    let w = enc.codec.width();
    let whole = res.state.string.len() / w * w;
    let symbols = enc.codec.decode(&res.state.string[..whole])?;
    println!("\nafter {} steps: {}", res.state.steps, decode_rows(&symbols)?.join(" "));

    let rep = verify_encoding(&t, 200)?;
    println!("200 rows reproduced: {}; unused: {:?}", rep.rows_match, rep.unused);

    let mut broken = t.clone();
    broken.remove('B', 'B');
    match triangle(&broken, 20) {
        Ok(_) => println!("no missing product"),
        Err(e) => println!("without B*B: {e}"),
    }
    Ok(())
}
