#!/usr/bin/env python3
"""
Módulo de Varredura - Simulador de Bolhas Periódicas
Executa pontos independentes de uma grade de parâmetros, em sequência ou em
processos paralelos. O resultado sempre segue a ordem da grade.
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Sequence

from modelo import ErroSimulacao
from registro import log


@dataclass
class FalhaPonto:
    """Ponto da grade que falhou; reportado em linha, sem interromper a varredura."""
    indice: int
    tarefa: Dict
    mensagem: str

    def __str__(self) -> str:
        return self.mensagem


def _executar(argumentos) -> Any:
    indice, funcao, tarefa = argumentos
    try:
        return funcao(**tarefa)
    # ValueError/RuntimeError cobrem as falhas de scipy (brentq sem colchete, sem convergência)
    except (ErroSimulacao, ValueError, ArithmeticError, RuntimeError) as e:
        return FalhaPonto(indice, tarefa, f"{type(e).__name__}: {e}")


def normalizar_workers(workers) -> int:
    """Número de processos: o pedido, limitado a [1, cpu_count]."""
    try:
        workers = int(workers)
    except (TypeError, ValueError):
        workers = 1
    return max(1, min(workers, os.cpu_count() or 1))


def mapear(funcao: Callable, tarefas: Sequence[Dict], workers: int = 1) -> List[Any]:
    """
    Aplica funcao(**tarefa) a cada tarefa.

    Args:
        funcao: Função de nível de módulo (precisa ser serializável por pickle)
        tarefas: Argumentos nomeados de cada ponto
        workers: Processos paralelos; 1 executa no processo atual

    Returns:
        Resultados na ordem das tarefas; falhas viram FalhaPonto
    """
    workers = normalizar_workers(workers)
    argumentos = [(i, funcao, dict(t)) for i, t in enumerate(tarefas)]
    inicio = time.time()

    if workers == 1 or len(argumentos) <= 1:
        resultados = [_executar(a) for a in argumentos]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            # map preserva a ordem de submissão
            resultados = list(executor.map(_executar, argumentos))

    falhas = [r for r in resultados if isinstance(r, FalhaPonto)]
    for falha in falhas:
        log(f"Ponto {falha.indice} ({falha.tarefa}) falhou: {falha.mensagem}", "AVISO")
    log(f"Varredura de {len(argumentos)} pontos com {workers} processo(s) em "
        f"{time.time() - inicio:.1f}s ({len(falhas)} falha(s))")
    return resultados
