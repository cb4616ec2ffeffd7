import type { TurnRecordDoc } from '../src/types';

export function switchTurn(): TurnRecordDoc {
  return {
    schema: 'turn/1',
    round: 2,
    user_text: 'And the kicks to wake up, amazing!',
    parse_result: {
      themes: [
        {
          topic: 'movie',
          instance: 'Inception',
          property: 'plot episode',
          content: 'waking up one after another',
          attitude: 'positive',
          question: null,
        },
      ],
      preferences: [],
      quit: false,
      irrelevant: false,
    },
    reasoner_output: {
      mode: 'general',
      answers: [],
      reply_theme: {
        theme: {
          topic: 'movie',
          instance: 'The Wolf of Wall Street',
          property: 'plot episode',
          content: null,
          attitude: null,
          question: null,
        },
        attitude: 'positive',
        source: 'Inception',
        relation: 'Leonardo DiCaprio acted in both',
        item: null,
        matched: [],
        prompt_attitude: 'positive',
      },
    },
    reply_text: 'Because you mentioned Inception...',
    rng_draws_used: 2,
  };
}

export function quitTurn(): TurnRecordDoc {
  return {
    schema: 'turn/1',
    round: 9,
    user_text: 'bye!',
    parse_result: { themes: [], preferences: [], quit: true, irrelevant: false },
    reasoner_output: { mode: 'quit', answers: [], reply_theme: null },
    reply_text: 'See you next time!',
    rng_draws_used: 0,
  };
}

export function recommendTurn(): TurnRecordDoc {
  return {
    schema: 'turn/1',
    round: 3,
    user_text: 'I love crime movies with DiCaprio',
    parse_result: {
      themes: [],
      preferences: [
        { topic: 'movie', property: 'actor', value: 'Leonardo DiCaprio' },
      ],
      quit: false,
      irrelevant: false,
    },
    reasoner_output: {
      mode: 'recommend',
      answers: [],
      reply_theme: {
        theme: null,
        attitude: null,
        source: null,
        relation: null,
        item: {
          topic: 'movie',
          title: 'Killers of the Flower Moon',
          rank: 2,
          rating: '7.7',
          genres: ['Crime', 'Drama', 'Western'],
          languages: ['English'],
          countries: ['USA'],
          writers: [],
          actors: ['Leonardo DiCaprio'],
          directors: [],
        },
        matched: [
          { topic: 'movie', property: 'genre', value: 'crime' },
          { topic: 'movie', property: 'actor', value: 'Leonardo DiCaprio' },
        ],
        prompt_attitude: null,
      },
    },
    reply_text: 'Do you know the recent movie named Killers of the Flower Moon?',
    rng_draws_used: 0,
  };
}
