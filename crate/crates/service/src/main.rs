use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use claro_core::LexiconSet;
use claro_service::{router, ServiceConfig, DEFAULT_MAX_BODY_BYTES};

/// Serve the claro linter over HTTP.
#[derive(Parser)]
#[command(name = "claro-serve", version)]
struct Args {
    #[arg(long, default_value = "127.0.0.1")]
    host: std::net::IpAddr,
    #[arg(long, default_value_t = 8080)]
    port: u16,
    /// Allow browser requests from this origin (`*` for any).
    #[arg(long)]
    cors_origin: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_BODY_BYTES)]
    max_body_bytes: usize,
    /// Lexicon file merged over the built-in tables (repeatable).
    #[arg(long = "lexicon")]
    lexicons: Vec<PathBuf>,
}

#[tokio::main]
async fn main() -> ExitCode {
    let args = Args::parse();
    let lexicons = match LexiconSet::load(&args.lexicons) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("claro-serve: {e}");
            return ExitCode::from(2);
        }
    };
    let config = ServiceConfig { max_body_bytes: args.max_body_bytes, cors_origin: args.cors_origin };
    let app = match router(lexicons, &config) {
        Ok(app) => app,
        Err(e) => {
            eprintln!("claro-serve: {e}");
            return ExitCode::from(2);
        }
    };
    let addr = SocketAddr::new(args.host, args.port);
    let listener = match tokio::net::TcpListener::bind(addr).await {
        Ok(l) => l,
        Err(e) => {
            eprintln!("claro-serve: cannot bind {addr}: {e}");
            return ExitCode::from(2);
        }
    };
    eprintln!("claro-serve listening on http://{addr}");
    if let Err(e) = axum::serve(listener, app).await {
        eprintln!("claro-serve: {e}");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
