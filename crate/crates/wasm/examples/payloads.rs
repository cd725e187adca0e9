//! Print the three browser-export payloads on the demo page's default
//! parameters. Handy for inspecting the JSON contract without a browser:
//!
//! ```sh
//! cargo run -p whitham-mi-wasm --example payloads | python3 -m json.tool
//! ```

fn main() {
    let curve = whitham_mi_wasm::stability_curve("whitham", 0.01, 3.0, 241);
    let wave = whitham_mi_wasm::wave_and_spectrum("whitham", 2.0, 0.02, 32, 0.005, 0.25, 21);
    let pencil = whitham_mi_wasm::pencil_summary("whitham", 0.9, 1.4, 101, 0.01, 0.02);
    println!("[{curve},\n{wave},\n{pencil}]");
}
