"""
Harness de Teste Metamórfico
Arquivo principal da aplicação (linha de comando)
"""

import sys
from pathlib import Path


def setup_paths() -> Path:
    """Garante que o diretório do projeto esteja no path (não o src)"""
    project_root = Path(__file__).parent
    if str(project_root) not in sys.path:
        sys.path.insert(0, str(project_root))
    return project_root


def main():
    """Função principal da aplicação"""
    project_root = setup_paths()

    src_path = project_root / "src"
    if not src_path.exists():
        print(f"❌ Diretório src não encontrado: {src_path}", file=sys.stderr)
        sys.exit(2)

    try:
        from src.ui.cli import app
    except ImportError as e:
        print(f"❌ Erro de importação: {e}", file=sys.stderr)
        print("📋 Execute: pip install -r requirements.txt", file=sys.stderr)
        sys.exit(2)

    app()


if __name__ == "__main__":
    main()
