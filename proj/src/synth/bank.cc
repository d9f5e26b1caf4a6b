/* Copyright 2026 The schemadst Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "bank.h"

#include "schemadst/common/error.h"

namespace schemadst::synth {
namespace {

const std::vector<std::string> kCities = {
    "san jose", "new york", "los angeles", "seattle", "portland", "chicago",
    "boston", "san diego", "denver", "austin", "phoenix", "miami",
    "atlanta", "fresno", "sacramento", "long beach", "oakland", "berkeley",
    "palo alto", "santa rosa"};
const std::vector<std::string> kDates = {
    "march 3", "march 7", "next monday", "next friday", "the 12th", "april 1",
    "tomorrow", "today", "the 21st", "may 5", "this weekend", "june 14"};
const std::vector<std::string> kTimes = {
    "6 pm", "7 30 pm", "10 am", "noon", "8 am", "5 15 pm", "11 am", "9 pm",
    "half past four", "1 pm"};
const std::vector<std::string> kAddresses = {
    "12 main street", "5 oak avenue", "the airport", "union station",
    "77 pine road", "300 market street", "9 elm court", "41 lake drive"};
const std::vector<std::string> kPhones = {
    "408 555 1234", "650 555 0199", "415 555 7788", "212 555 4410",
    "310 555 9021"};
const std::vector<std::string> kCounts6 = {"1", "2", "3", "4", "5", "6"};
const std::vector<std::string> kCounts4 = {"1", "2", "3", "4"};

}  // namespace

const std::vector<SlotTemplate>& SlotTemplates() {
  static const std::vector<SlotTemplate> kTemplates = {
      // Non-categorical.
      {"city", "name of the city", "city", false, kCities},
      {"date", "date of the booking", "date", false, kDates},
      {"time", "time of the booking", "time", false, kTimes},
      {"restaurant_name", "name of the restaurant", "restaurant name", false,
       {"blue bay grill", "golden dragon", "the olive tree", "sushi house", "taco loco",
        "river cafe", "little italy", "green garden"}},
      {"cuisine", "cuisine of the food served", "cuisine", false,
       {"italian", "mexican", "chinese", "thai", "indian", "japanese", "french",
        "vegetarian"}},
      {"hotel_name", "name of the hotel", "hotel name", false,
       {"grand plaza", "ocean view inn", "the royal hotel", "sunset lodge", "park suites",
        "city center inn"}},
      {"check_in_date", "check in date at the hotel", "check in date", false, kDates},
      {"check_out_date", "check out date at the hotel", "check out date", false, kDates},
      {"origin_city", "departure city of the trip", "departure city", false, kCities},
      {"destination_city", "destination city of the trip", "destination city", false, kCities},
      {"departure_date", "date of departure", "departure date", false, kDates},
      {"departure_time", "time of departure", "departure time", false, kTimes},
      {"airline", "name of the airline", "airline", false,
       {"united", "delta", "american airlines", "alaska airlines", "southwest",
        "jet blue"}},
      {"movie_name", "title of the movie", "movie", false,
       {"the lost city", "dark river", "hidden figures", "star trail", "the last song",
        "blue moon", "night watch"}},
      {"theater_name", "name of the theater", "theater", false,
       {"regal cinema", "amc center", "the grand theater", "city cinema",
        "sunset screens"}},
      {"event_name", "name of the event", "event", false,
       {"jazz night", "rock fest", "comedy hour", "the big game", "summer gala",
        "food fair"}},
      {"venue", "venue where the event is held", "venue", false,
       {"the arena", "central park", "town hall", "the stadium", "pier 39"}},
      {"artist", "name of the artist", "artist", false,
       {"taylor swift", "the beatles", "adele", "drake", "coldplay", "miles davis"}},
      {"song_name", "title of the song", "song", false,
       {"hello", "yellow", "let it be", "shake it off", "blue in green"}},
      {"album", "name of the album", "album", false,
       {"thriller", "abbey road", "red", "kind of blue", "parachutes"}},
      {"pickup_location", "pickup location of the ride", "pickup location", false, kAddresses},
      {"destination", "destination of the ride", "destination", false, kAddresses},
      {"address", "street address of the place", "address", false, kAddresses},
      {"phone_number", "phone number of the place", "phone number", false, kPhones},
      {"recipient_name", "recipient of the money", "recipient", false,
       {"john", "mary", "alex", "sam", "linda", "david", "priya"}},
      {"amount", "amount of money to send", "amount", false,
       {"50 dollars", "100 dollars", "20 dollars", "250 dollars", "75 dollars"}},
      {"dentist_name", "name of the dentist", "dentist", false,
       {"dr smith", "dr lee", "dr patel", "dr garcia", "dr chen"}},
      {"property_name", "name of the property", "property", false,
       {"maple court", "oak apartments", "river view homes", "cedar heights",
        "lakeside lofts"}},
      {"area", "area of the property", "area", false, kCities},
      // Categorical.
      {"party_size", "number of people in the party", "party size", true, kCounts6},
      {"price_range", "price range of the place", "price range", true,
       {"cheap", "moderate", "expensive", "very expensive"}},
      {"star_rating", "star rating of the hotel", "star rating", true,
       {"1", "2", "3", "4", "5"}},
      {"number_of_rooms", "number of rooms to book", "number of rooms", true,
       {"1", "2", "3"}},
      {"seating_class", "cabin class of the seat", "seating class", true,
       {"economy", "premium economy", "business", "first class"}},
      {"number_of_tickets", "number of tickets to buy", "number of tickets", true,
       kCounts4},
      {"number_of_stops", "number of stops on the way", "number of stops", true,
       {"0", "1", "2"}},
      {"genre", "genre of the movie", "genre", true,
       {"comedy", "drama", "action", "horror", "romance"}},
      {"show_type", "show type of the screening", "show type", true,
       {"regular", "3d", "imax"}},
      {"event_type", "type of the event", "event type", true,
       {"music", "sports", "theater"}},
      {"car_type", "type of the car", "car type", true,
       {"compact", "standard", "full size", "suv"}},
      {"payment_method", "method of payment", "payment method", true,
       {"cash", "credit card", "debit card"}},
      {"music_genre", "genre of the music", "music genre", true,
       {"pop", "rock", "jazz", "country"}},
      {"playback_device", "device to play the music on", "device", true,
       {"tv", "speaker", "phone"}},
      {"number_of_riders", "number of people riding", "number of riders", true,
       kCounts4},
      {"ride_type", "type of the ride", "ride type", true, {"pool", "regular", "luxury"}},
      {"account_type", "type of the bank account", "account type", true,
       {"checking", "savings"}},
      {"recipient_account_type", "type of the account receiving the money",
       "recipient account type", true, {"checking", "savings"}},
      {"fare_type", "type of the fare", "fare type", true,
       {"economy", "flexible", "refundable"}},
      {"number_of_beds", "number of beds in the home", "number of beds", true, kCounts4},
      {"number_of_baths", "number of baths in the home", "number of baths", true,
       {"1", "2", "3"}},
  };
  return kTemplates;
}

const SlotTemplate& FindSlotTemplate(const std::string& name) {
  for (const auto& t : SlotTemplates()) {
    if (t.name == name) return t;
  }
  throw ConfigError("no slot template '" + name + "'");
}

const std::vector<DomainTemplate>& DomainTemplates() {
  static const std::vector<DomainTemplate> kDomains = {
      {"Restaurants", "find and reserve tables at restaurants",
       {{"FindRestaurants", "find a restaurant by location and food",
         "find a restaurant"},
        {"ReserveRestaurant", "reserve a table at a restaurant", "reserve a table"}},
       {"city", "restaurant_name", "cuisine", "date", "time", "party_size",
        "price_range", "phone_number", "address"}},
      {"Hotels", "find and book hotel rooms",
       {{"SearchHotel", "find a hotel in a city", "find a hotel"},
        {"ReserveHotel", "book a hotel room for a stay", "book a hotel room"}},
       {"city", "hotel_name", "check_in_date", "check_out_date", "number_of_rooms",
        "star_rating", "price_range", "phone_number", "address"}},
      {"Flights", "search and book flights",
       {{"SearchOnewayFlight", "find a one way flight", "find a one way flight"},
        {"ReserveOnewayFlight", "book a flight for a trip", "book a flight"}},
       {"origin_city", "destination_city", "departure_date", "departure_time", "airline",
        "seating_class", "number_of_tickets", "number_of_stops"}},
      {"Movies", "find movies and buy tickets",
       {{"FindMovies", "find a movie playing nearby", "find a movie"},
        {"BuyMovieTickets", "buy movie tickets for a show", "buy movie tickets"}},
       {"city", "movie_name", "theater_name", "date", "time", "genre", "show_type",
        "number_of_tickets"}},
      {"Events", "find events and buy tickets",
       {{"FindEvents", "find an event in a city", "find an event"},
        {"BuyEventTickets", "buy event tickets for a show", "buy event tickets"}},
       {"city", "event_name", "venue", "date", "time", "event_type",
        "number_of_tickets", "address"}},
      {"RentalCars", "rent cars for trips",
       {{"GetCarsAvailable", "find a rental car for a trip", "find a rental car"},
        {"ReserveCar", "reserve a car for pickup", "reserve a car"}},
       {"city", "pickup_location", "date", "time", "car_type", "payment_method",
        "phone_number"}},
      {"Music", "find and play music",
       {{"LookupMusic", "look up a song or album", "look up a song"},
        {"PlayMedia", "play a song on a device", "play a song"}},
       {"artist", "song_name", "album", "music_genre", "playback_device"}},
      {"RideSharing", "book rides to a destination",
       {{"GetRide", "get a ride right now", "get a ride"},
        {"ScheduleRide", "schedule a ride for later", "schedule a ride"}},
       {"pickup_location", "destination", "number_of_riders", "ride_type", "date",
        "time", "payment_method"}},
      {"Banks", "check balances and transfer money",
       {{"CheckBalance", "check the balance of an account", "check the balance"},
        {"TransferMoney", "transfer money to someone", "transfer money"}},
       {"account_type", "amount", "recipient_name", "recipient_account_type", "date"}},
      {"Buses", "search and book bus trips",
       {{"FindBus", "find a bus between cities", "find a bus"},
        {"BuyBusTicket", "buy a bus ticket for a trip", "buy a bus ticket"}},
       {"origin_city", "destination_city", "departure_date", "departure_time",
        "number_of_tickets", "fare_type"}},
      {"Dentists", "find dentists and book appointments",
       {{"FindProvider", "find a dentist nearby", "find a dentist"},
        {"BookAppointment", "book an appointment with a dentist",
         "book an appointment"}},
       {"city", "dentist_name", "date", "time", "phone_number", "address"}},
      {"Homes", "find homes to rent and schedule visits",
       {{"FindHomeByArea", "find a house to rent in an area",
         "find a house to rent"},
        {"ScheduleVisit", "schedule a visit to a property", "schedule a visit"}},
       {"area", "property_name", "number_of_beds", "number_of_baths", "date",
        "phone_number", "price_range"}},
  };
  return kDomains;
}

const std::vector<std::string>& InformPatterns() {
  static const std::vector<std::string> kPatterns = {
      "i want the {slot} to be {value}", "the {slot} should be {value}",
      "make the {slot} {value}", "i would like {value} as the {slot}",
      "set the {slot} to {value}"};
  return kPatterns;
}

const std::vector<std::string>& DontcarePatterns() {
  static const std::vector<std::string> kPatterns = {
      "i do not care about the {slot}", "any {slot} is fine",
      "the {slot} does not matter"};
  return kPatterns;
}

const std::vector<std::string>& RequestPatterns() {
  static const std::vector<std::string> kPatterns = {
      "what is the {slot}", "can you tell me the {slot}", "i need to know the {slot}"};
  return kPatterns;
}

const std::vector<std::string>& FillerPatterns() {
  static const std::vector<std::string> kPatterns = {
      "ok , sounds good", "thank you", "great , go on", "alright"};
  return kPatterns;
}

const char kIntentPattern[] = "i want to {intent}";
const char kIntentChangePattern[] = "now i want to {intent}";
const char kAckPattern[] = "sure , i can help you {intent} .";
const char kAnswerPattern[] = "the {slot} is {value} .";
const char kOfferPattern[] = "how about {value} for the {slot} ?";
const char kAcceptPattern[] = "yes , that works";
const char kSwitchPrompt[] = "is there anything else i can do ?";

}  // namespace schemadst::synth
