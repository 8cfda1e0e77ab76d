#!/usr/bin/env python3
"""
Módulo de Registro de Execução - Simulador de Bolhas Periódicas
Mantém o log com timestamp usado por todos os módulos e pela linha de comando.
"""

from datetime import datetime
from typing import List

_historico: List[str] = []
_silencioso = False


def log(mensagem: str, tipo: str = "INFO") -> str:
    """
    Registra mensagem no log.

    Args:
        mensagem: Texto da mensagem
        tipo: INFO, AVISO ou ERRO

    Returns:
        A linha registrada
    """
    timestamp = datetime.now().strftime("%d/%m/%Y %H:%M:%S")
    entrada = f"[{timestamp}] {tipo}: {mensagem}"
    if not _silencioso:
        print(entrada)
    _historico.append(entrada)
    return entrada


def historico() -> List[str]:
    """Retorna cópia das linhas registradas nesta execução."""
    return _historico.copy()


def limpar_historico():
    _historico.clear()


def definir_silencioso(silencioso: bool = True):
    """Liga/desliga a impressão no stdout (o histórico continua sendo gravado)."""
    global _silencioso
    _silencioso = silencioso
